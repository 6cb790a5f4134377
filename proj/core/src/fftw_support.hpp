#pragma once

#include <mutex>

namespace bqmaxwell::detail {

// FFTW's planner is not re-entrant; every plan creation and destruction goes
// through this lock.
std::mutex& fftw_planner_mutex();

}  // namespace bqmaxwell::detail
