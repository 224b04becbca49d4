# -*- coding: utf-8 -*-
import math

import numpy as np
import pytest

import intermittency


@pytest.fixture(autouse=True)
def add_default_names(doctest_namespace):
    doctest_namespace['np'] = np
    doctest_namespace['math'] = math
    doctest_namespace['__name__'] = '__main__'

    for name in intermittency.__all__:
        doctest_namespace[name] = getattr(intermittency, name)
