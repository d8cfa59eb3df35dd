#pragma once

#include "structobs/error.hpp"
#include "structobs/flow.hpp"
#include "structobs/graph.hpp"
#include "structobs/io.hpp"
#include "structobs/matching.hpp"
#include "structobs/placement.hpp"
#include "structobs/probe.hpp"
#include "structobs/structural_matrix.hpp"
#include "structobs/system.hpp"
#include "structobs/verify.hpp"
