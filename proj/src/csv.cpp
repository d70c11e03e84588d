#include "lorenzn/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace lorenzn {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const Trajectory& traj, const std::string& path) {
    traj.validate();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("write_csv: cannot open '" + path + "' for writing");
    for (const auto& [key, value] : traj.meta)
        if (key != "coords") f << "# " << key << "=" << value << "\n";
    f << "# coords=" << (traj.kind == CoordKind::Polar ? "polar" : "cartesian") << "\n";
    const bool colored = traj.has_colors();
    if (traj.kind == CoordKind::Polar)
        f << "t,radius,angle,z";
    else
        f << "t,x,y,z";
    if (colored) f << ",color";
    f << "\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        f << format_double(traj.times[i]) << ',' << format_double(traj.states[i][0]) << ','
          << format_double(traj.states[i][1]) << ',' << format_double(traj.states[i][2]);
        if (colored) f << ',' << traj.colors[i];
        f << "\n";
    }
    if (!f) throw ConfigError("write_csv: write failed for '" + path + "'");
}

namespace {

double parse_double(const std::string& s, std::size_t row) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ConfigError("read_csv: malformed number '" + s + "' at row " +
                          std::to_string(row));
    return v;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, ',')) out.push_back(cur);
    return out;
}

}  // namespace

Trajectory read_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("read_csv: cannot open '" + path + "'");

    Trajectory traj;
    std::string line;
    std::size_t row = 0;
    bool header_seen = false;
    bool colored = false;

    while (std::getline(f, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1);
            const auto eq = body.find('=');
            if (eq != std::string::npos) {
                const std::string key = body.substr(0, eq);
                const std::string value = body.substr(eq + 1);
                if (key == "coords")
                    traj.kind = (value == "polar") ? CoordKind::Polar : CoordKind::Cartesian;
                else
                    traj.meta[key] = value;
            }
            continue;
        }
        if (!header_seen) {
            if (line == "t,x,y,z" || line == "t,radius,angle,z")
                colored = false;
            else if (line == "t,x,y,z,color" || line == "t,radius,angle,z,color")
                colored = true;
            else
                throw ConfigError("read_csv: unrecognized header '" + line + "' at row " +
                                  std::to_string(row));
            header_seen = true;
            continue;
        }
        const auto fields = split(line);
        const std::size_t expected = colored ? 5u : 4u;
        if (fields.size() != expected)
            throw ConfigError("read_csv: expected " + std::to_string(expected) +
                              " fields at row " + std::to_string(row) + ", got " +
                              std::to_string(fields.size()));
        traj.times.push_back(parse_double(fields[0], row));
        traj.states.push_back({parse_double(fields[1], row), parse_double(fields[2], row),
                               parse_double(fields[3], row)});
        if (colored) {
            const double c = parse_double(fields[4], row);
            traj.colors.push_back(static_cast<int>(c));
        }
    }
    if (!header_seen) throw ConfigError("read_csv: missing header in '" + path + "'");
    traj.validate();
    return traj;
}

}  // namespace lorenzn
