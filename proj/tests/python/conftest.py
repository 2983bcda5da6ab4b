import glob
import importlib.util
import os
import sys

# Under ctest, load the in-tree build explicitly; an editable install would
# otherwise win the import.
stage = os.environ.get("ORBITLAB_PYTHON_PATH")
if stage:
    package = os.path.join(stage, "orbitlab")
    core_path = glob.glob(os.path.join(package, "_core*"))[0]
    core_spec = importlib.util.spec_from_file_location("orbitlab._core", core_path)
    core = importlib.util.module_from_spec(core_spec)
    sys.modules["orbitlab._core"] = core
    core_spec.loader.exec_module(core)
    spec = importlib.util.spec_from_file_location(
        "orbitlab", os.path.join(package, "__init__.py"), submodule_search_locations=[package]
    )
    module = importlib.util.module_from_spec(spec)
    sys.modules["orbitlab"] = module
    spec.loader.exec_module(module)
    module._core = core
