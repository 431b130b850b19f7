#include "ramsey/csv.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "ramsey/errors.hpp"

namespace ramsey {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, int stride) {
    if (stride < 1) stride = 1;
    out << "t,k,c,L,n,x,z,k_lower,k_upper,c_lower,c_upper,savings_rate\n";
    const std::size_t n = traj.size();
    for (std::size_t i = 0; i < n; i += static_cast<std::size_t>(stride)) {
        std::size_t j = i;
        // never drop the endpoint: the last strided index snaps to it
        if (j + static_cast<std::size_t>(stride) >= n) j = n - 1;
        out << format_double(traj.t[j]) << ',' << format_double(traj.k[j]) << ','
            << format_double(traj.c[j]) << ',' << format_double(traj.labour[j]) << ','
            << format_double(traj.growth[j]) << ',' << format_double(traj.x[j]) << ','
            << format_double(traj.z[j]) << ',' << format_double(traj.k_lower[j]) << ','
            << format_double(traj.k_upper[j]) << ',' << format_double(traj.c_lower[j])
            << ',' << format_double(traj.c_upper[j]) << ','
            << format_double(traj.savings_rate[j]) << '\n';
        if (j == n - 1) break;
    }
}

void write_trajectory_csv_file(const std::string& path, const Trajectory& traj,
                               int stride) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    write_trajectory_csv(out, traj, stride);
    out.flush();
    if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace ramsey
