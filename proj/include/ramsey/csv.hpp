#pragma once

#include <iosfwd>
#include <string>

#include "ramsey/dynamics.hpp"

namespace ramsey {

// Column layout, in order:
//   t,k,c,L,n,x,z,k_lower,k_upper,c_lower,c_upper,savings_rate
// Values are printed with %.17g so a written file round-trips bit for bit.
// `stride` keeps every stride-th sample; the final sample is always written.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, int stride = 1);

// Convenience wrapper: writes to `path`, throwing ramsey::Error on I/O failure.
void write_trajectory_csv_file(const std::string& path, const Trajectory& traj,
                               int stride = 1);

std::string format_double(double v);  // %.17g

}  // namespace ramsey
