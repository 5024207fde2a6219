#pragma once

#include "cumdiff/analysis.hpp"
#include "cumdiff/compensated.hpp"
#include "cumdiff/coverage.hpp"
#include "cumdiff/csv.hpp"
#include "cumdiff/cumulative.hpp"
#include "cumdiff/error.hpp"
#include "cumdiff/hilbert.hpp"
#include "cumdiff/random.hpp"
#include "cumdiff/reliability.hpp"
#include "cumdiff/report.hpp"
#include "cumdiff/sample.hpp"
#include "cumdiff/synthgen.hpp"
