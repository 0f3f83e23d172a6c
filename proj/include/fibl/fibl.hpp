#pragma once

#include "fibl/bigint.hpp"
#include "fibl/catalan.hpp"
#include "fibl/elliptic.hpp"
#include "fibl/errors.hpp"
#include "fibl/fib.hpp"
#include "fibl/qanalogs.hpp"
#include "fibl/qpoly.hpp"
#include "fibl/report.hpp"
#include "fibl/suites.hpp"
#include "fibl/theta.hpp"
#include "fibl/tilings.hpp"
