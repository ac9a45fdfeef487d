// test_main.cpp — doctest runner for the unit tests

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
