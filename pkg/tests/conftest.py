import os
import sys

import pytest

# Add project root to sys.path so imports like `from sampling...` work
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from oracle.quadrature import QuadratureSpec  # noqa: E402


@pytest.fixture
def quad_spec():
    return QuadratureSpec()
