// Umbrella header.
#ifndef URDOP_URDOP_HPP
#define URDOP_URDOP_HPP

#include "urdop/baselines.hpp"
#include "urdop/comm_model.hpp"
#include "urdop/de_ops.hpp"
#include "urdop/deployment.hpp"
#include "urdop/harness.hpp"
#include "urdop/record_io.hpp"
#include "urdop/run_record.hpp"
#include "urdop/sadevps.hpp"
#include "urdop/scenario.hpp"

#endif // URDOP_URDOP_HPP
