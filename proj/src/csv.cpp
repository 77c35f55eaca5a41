#include "cytovisc/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <string_view>

#include "cytovisc/errors.hpp"

namespace cytovisc {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        auto const comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

double parse_number(std::string_view field, std::size_t line_no) {
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\r')) field.remove_suffix(1);
    double v = 0.0;
    auto const [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError("line " + std::to_string(line_no) + ": not a number: '" + std::string(field) + "'");
    }
    return v;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

double uniform_dt(std::vector<double> const& times) {
    if (times.size() < 2) throw ParseError("trajectory needs at least two frames");
    if (times.front() != 0.0) throw ParseError("time column must start at 0");
    double const dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    if (!(dt > 0.0)) throw ParseError("time column must be increasing");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (std::abs(times[i] - dt * static_cast<double>(i)) > 1e-6 * dt) {
            throw ParseError("time column is not uniformly spaced at row " + std::to_string(i + 1));
        }
    }
    return dt;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    auto const [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void write_trajectory_csv(std::ostream& out, Trajectory const& t) {
    out << "t,x,y,z\n";
    for (std::size_t i = 0; i < t.positions.size(); ++i) {
        auto const& p = t.positions[i];
        out << format_double(t.dt_s * static_cast<double>(i)) << ',' << format_double(p.x) << ',' << format_double(p.y)
            << ',' << format_double(p.z) << '\n';
    }
}

void write_particles_csv(std::ostream& out, std::vector<Trajectory> const& particles) {
    out << "t,particle,x,y,z\n";
    if (particles.empty()) return;
    std::size_t const frames = particles.front().positions.size();
    double const dt = particles.front().dt_s;
    for (std::size_t f = 0; f < frames; ++f) {
        std::string const t = format_double(dt * static_cast<double>(f));
        for (std::size_t p = 0; p < particles.size(); ++p) {
            auto const& v = particles[p].positions.at(f);
            out << t << ',' << p << ',' << format_double(v.x) << ',' << format_double(v.y) << ',' << format_double(v.z)
                << '\n';
        }
    }
}

Trajectory read_trajectory_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != "t,x,y,z") {
        throw ParseError("expected header 't,x,y,z'");
    }
    std::vector<double> times;
    Trajectory out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto const f = split_fields(line);
        if (f.size() != 4) throw ParseError("line " + std::to_string(line_no) + ": expected 4 fields");
        times.push_back(parse_number(f[0], line_no));
        out.positions.push_back({parse_number(f[1], line_no), parse_number(f[2], line_no), parse_number(f[3], line_no)});
    }
    out.dt_s = uniform_dt(times);
    return out;
}

std::vector<Trajectory> read_particles_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != "t,particle,x,y,z") {
        throw ParseError("expected header 't,particle,x,y,z'");
    }
    std::map<std::size_t, std::pair<std::vector<double>, Trajectory>> by_particle;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto const f = split_fields(line);
        if (f.size() != 5) throw ParseError("line " + std::to_string(line_no) + ": expected 5 fields");
        double const id = parse_number(f[1], line_no);
        if (id < 0 || id != std::floor(id)) throw ParseError("line " + std::to_string(line_no) + ": bad particle id");
        auto& [times, traj] = by_particle[static_cast<std::size_t>(id)];
        times.push_back(parse_number(f[0], line_no));
        traj.positions.push_back({parse_number(f[2], line_no), parse_number(f[3], line_no), parse_number(f[4], line_no)});
    }
    std::vector<Trajectory> out;
    std::size_t expected = 0;
    for (auto& [id, entry] : by_particle) {
        if (id != expected++) throw ParseError("particle ids must be contiguous from 0");
        entry.second.dt_s = uniform_dt(entry.first);
        out.push_back(std::move(entry.second));
    }
    return out;
}

}  // namespace cytovisc
