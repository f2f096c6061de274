#pragma once

#include "dcsbm/alignment.hpp"
#include "dcsbm/baselines.hpp"
#include "dcsbm/common.hpp"
#include "dcsbm/detect.hpp"
#include "dcsbm/eigen_solver.hpp"
#include "dcsbm/experiment.hpp"
#include "dcsbm/graph.hpp"
#include "dcsbm/io.hpp"
#include "dcsbm/kmeans.hpp"
#include "dcsbm/metrics.hpp"
#include "dcsbm/model.hpp"
#include "dcsbm/operators.hpp"
#include "dcsbm/sym_matrix.hpp"
