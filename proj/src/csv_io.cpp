#include "csf/csv_io.hpp"

#include "csf/errors.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace csf {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* to_string(Outcome o) {
    switch (o) {
    case Outcome::Completed: return "completed";
    case Outcome::BlowUpDetected: return "blowup";
    default: return "singular";
    }
}

namespace {

void emit_field(const Trajectory& traj, const Grid& grid,
                const Field State::* field, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "t,z,value\n";
    for (const State& s : traj.samples) {
        const std::string t = format_number(s.t);
        const Field& f = s.*field;
        for (int i = 0; i <= grid.nz; ++i)
            out << t << ',' << format_number(grid.z(i)) << ','
                << format_number(f[static_cast<std::size_t>(i)]) << '\n';
    }
    if (!out) throw IoError("write failure on '" + path + "'");
}

} // namespace

void emit_csv(const Trajectory& traj, const Grid& grid, const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
    emit_field(traj, grid, &State::u, dir + "/u.csv");
    emit_field(traj, grid, &State::eta, dir + "/eta.csv");
    emit_field(traj, grid, &State::zeta, dir + "/zeta.csv");
    emit_field(traj, grid, &State::P, dir + "/P.csv");
    emit_field(traj, grid, &State::A, dir + "/A.csv");
}

void write_report(const std::string& path,
                  const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    for (const auto& [k, v] : entries) out << k << " = " << v << '\n';
    if (!out) throw IoError("write failure on '" + path + "'");
}

std::vector<std::pair<std::string, std::string>>
trajectory_report_entries(const Trajectory& traj) {
    std::vector<std::pair<std::string, std::string>> e;
    e.emplace_back("outcome", to_string(traj.outcome));
    e.emplace_back("final_time", format_number(traj.samples.back().t));
    if (traj.outcome != Outcome::Completed) {
        e.emplace_back("event_time", format_number(traj.event_time));
        e.emplace_back("event_field", traj.event_field);
    }
    e.emplace_back("num_samples", std::to_string(traj.samples.size()));
    for (std::size_t i = 0; i < traj.events.size(); ++i)
        e.emplace_back("event." + std::to_string(i), traj.events[i]);
    return e;
}

} // namespace csf
