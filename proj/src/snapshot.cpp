/*
   Copyright 2026 the raddiff authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#include "raddiff/snapshot.hpp"

#include <cstdio>
#include <fstream>
#include <memory>

#include <json.hpp>

namespace raddiff {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

SnapshotFormat snapshot_format_from_name(const std::string& name) {
    if (name == "csv") return SnapshotFormat::Csv;
    if (name == "binary") return SnapshotFormat::Binary;
    throw ConfigError("unknown snapshot format '" + name + "' (csv|binary)");
}

namespace {

json make_header(const char* kind, const PeriodicGrid& grid, const AngularQuadrature* quad,
                 double time, SnapshotFormat format, std::size_t count) {
    json h;
    h["kind"] = kind;
    h["format"] = format == SnapshotFormat::Csv ? "csv" : "binary";
    h["dim"] = grid.dim();
    h["cells_per_axis"] = grid.n();
    h["time"] = time;
    h["count"] = count;
    if (quad) {
        h["quad_kind"] = quadrature_kind_name(quad->kind());
        h["quad_order"] = quad->order();
        h["quad_nodes"] = quad->size();
    }
    return h;
}

void write_values(std::ofstream& out, const std::vector<double>& values, std::size_t cells,
                  SnapshotFormat format) {
    if (format == SnapshotFormat::Binary) {
        out.write(reinterpret_cast<const char*>(values.data()),
                  static_cast<std::streamsize>(values.size() * sizeof(double)));
        return;
    }
    out << "cell,angle,value\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::size_t q = i / cells, c = i % cells;
        out << c << ',' << q << ',' << format_double(values[i]) << '\n';
    }
}

struct LoadedSnapshot {
    json header;
    std::vector<double> values;
};

LoadedSnapshot read_snapshot(const std::string& path, std::size_t cells_hint_unused = 0) {
    (void)cells_hint_unused;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NumericError("snapshot", "cannot open '" + path + "'");
    std::string header_line;
    std::getline(in, header_line);
    LoadedSnapshot snap;
    snap.header = json::parse(header_line, nullptr, /*allow_exceptions=*/true);
    std::size_t count = snap.header.at("count").get<std::size_t>();
    snap.values.assign(count, 0.0);
    if (snap.header.at("format") == "binary") {
        in.read(reinterpret_cast<char*>(snap.values.data()),
                static_cast<std::streamsize>(count * sizeof(double)));
        if (!in) throw NumericError("snapshot", "truncated binary snapshot '" + path + "'");
    } else {
        std::string line;
        std::getline(in, line);  // column header
        std::size_t cells = 0;
        if (snap.header.contains("quad_nodes"))
            cells = count / snap.header.at("quad_nodes").get<std::size_t>();
        else
            cells = count;
        for (std::size_t i = 0; i < count; ++i) {
            if (!std::getline(in, line))
                throw NumericError("snapshot", "truncated csv snapshot '" + path + "'");
            std::size_t p1 = line.find(','), p2 = line.find(',', p1 + 1);
            std::size_t c = std::stoul(line.substr(0, p1));
            std::size_t q = std::stoul(line.substr(p1 + 1, p2 - p1 - 1));
            snap.values[q * cells + c] = std::strtod(line.c_str() + p2 + 1, nullptr);
        }
    }
    return snap;
}

}  // namespace

void save_kinetic_snapshot(const KineticField& f, double time, const std::string& path,
                           SnapshotFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw NumericError("snapshot", "cannot write '" + path + "'");
    out << make_header("kinetic", f.grid(), &f.quad(), time, format, f.values().size()).dump()
        << '\n';
    write_values(out, f.values(), f.cells(), format);
}

KineticField load_kinetic_snapshot(const std::string& path, double* time_out) {
    LoadedSnapshot snap = read_snapshot(path);
    if (snap.header.at("kind") != "kinetic")
        throw NumericError("snapshot", "'" + path + "' is not a kinetic snapshot");
    PeriodicGrid grid(snap.header.at("dim").get<int>(), snap.header.at("cells_per_axis").get<int>());
    auto quad = std::make_shared<AngularQuadrature>(AngularQuadrature::build(
        quadrature_kind_from_name(snap.header.at("quad_kind").get<std::string>()),
        snap.header.at("quad_order").get<int>()));
    KineticField f(grid, quad);
    if (f.values().size() != snap.values.size())
        throw NumericError("snapshot", "value count mismatch in '" + path + "'");
    f.values() = std::move(snap.values);
    if (time_out) *time_out = snap.header.at("time").get<double>();
    return f;
}

void save_scalar_snapshot(const ScalarField& f, double time, const std::string& path,
                          SnapshotFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw NumericError("snapshot", "cannot write '" + path + "'");
    out << make_header("scalar", f.grid, nullptr, time, format, f.data.size()).dump() << '\n';
    write_values(out, f.data, f.data.size(), format);
}

ScalarField load_scalar_snapshot(const std::string& path, double* time_out) {
    LoadedSnapshot snap = read_snapshot(path);
    if (snap.header.at("kind") != "scalar")
        throw NumericError("snapshot", "'" + path + "' is not a scalar snapshot");
    PeriodicGrid grid(snap.header.at("dim").get<int>(), snap.header.at("cells_per_axis").get<int>());
    ScalarField f(grid);
    if (f.data.size() != snap.values.size())
        throw NumericError("snapshot", "value count mismatch in '" + path + "'");
    f.data = std::move(snap.values);
    if (time_out) *time_out = snap.header.at("time").get<double>();
    return f;
}

}  // namespace raddiff
