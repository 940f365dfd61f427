#pragma once

#include "acceptance.hpp"
#include "giambelli.hpp"
#include "hierarchy.hpp"
#include "io.hpp"
#include "laurent.hpp"
#include "linalg.hpp"
#include "partitions.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "schur.hpp"
#include "schur_q.hpp"
#include "series.hpp"
