import os
import sys

# the CMake build exports the extension directory; the package sources sit in
# python/ two levels up from this file
_here = os.path.dirname(os.path.abspath(__file__))
_pkg_dir = os.path.join(_here, os.pardir, os.pardir, "python")

module_dir = os.environ.get("EPS0_MODULE_DIR")
if module_dir and module_dir not in sys.path:
    sys.path.insert(0, module_dir)
if _pkg_dir not in sys.path:
    sys.path.insert(0, os.path.abspath(_pkg_dir))
