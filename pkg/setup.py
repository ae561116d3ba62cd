# All packaging metadata lives in setup.cfg, so this file "does nothing". It is only kept to allow editable installs
# (pip install -e .) with older versions of pip and setuptools.
import setuptools

setuptools.setup()
