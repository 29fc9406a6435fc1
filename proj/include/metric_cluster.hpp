#pragma once

#include "metric_cluster/rational.hpp"
#include "metric_cluster/errors.hpp"
#include "metric_cluster/graph.hpp"
#include "metric_cluster/enumeration.hpp"
#include "metric_cluster/cliques.hpp"
#include "metric_cluster/isomorphism.hpp"
#include "metric_cluster/distance_matrix.hpp"
#include "metric_cluster/metrization.hpp"
#include "metric_cluster/fpc.hpp"
#include "metric_cluster/realization.hpp"
#include "metric_cluster/recovery.hpp"
