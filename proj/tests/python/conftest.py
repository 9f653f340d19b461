import os
import shutil
import sys

# When driven by ctest the compiled module sits in the CMake build tree;
# assemble an importable package next to it.  An installed `lrfield` (pip
# install .) works as-is.


def _setup_build_tree_package():
    mod_dir = os.environ.get("LRFIELD_MODULE_DIR")
    src_dir = os.environ.get("LRFIELD_SOURCE_DIR")
    if not mod_dir or not src_dir:
        return
    pkg_parent = os.path.join(mod_dir, "python_pkg")
    pkg = os.path.join(pkg_parent, "lrfield")
    os.makedirs(pkg, exist_ok=True)
    shutil.copy(os.path.join(src_dir, "python", "lrfield", "__init__.py"), pkg)
    for name in os.listdir(mod_dir):
        if name.startswith("_core") and name.endswith(".so"):
            shutil.copy(os.path.join(mod_dir, name), pkg)
    sys.path.insert(0, pkg_parent)


_setup_build_tree_package()
