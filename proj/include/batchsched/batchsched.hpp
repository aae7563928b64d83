#ifndef BATCHSCHED_BATCHSCHED_HPP
#define BATCHSCHED_BATCHSCHED_HPP

#include "batchsched/construction.hpp"
#include "batchsched/core.hpp"
#include "batchsched/generator.hpp"
#include "batchsched/grasp.hpp"
#include "batchsched/io.hpp"
#include "batchsched/local_search.hpp"
#include "batchsched/milp.hpp"
#include "batchsched/oracle.hpp"
#include "batchsched/path_relinking.hpp"
#include "batchsched/rng.hpp"
#include "batchsched/schedule.hpp"

#endif
