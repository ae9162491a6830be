# Licensed under the MIT License.
import sys

from noisybayes.cli import main

sys.exit(main())
