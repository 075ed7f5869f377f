#include "dlab/io.hpp"

#include "dlab/errors.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace dlab {

namespace {

template <typename T>
void put(std::ofstream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw BadParams("binary read failed (truncated file?)");
    return v;
}

void write_field_body(std::ofstream& out, const Field& f) {
    out.write("DLF1", 4);
    put<std::uint64_t>(out, static_cast<std::uint64_t>(f.n()));
    put<double>(out, f.grid().length());
    put<std::uint8_t>(out, f.repr() == Repr::Spectral ? 1 : 0);
    for (const cplx& v : f.values()) {
        put<double>(out, v.real());
        put<double>(out, v.imag());
    }
}

Field read_field_body(std::ifstream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "DLF1", 4) != 0)
        throw BadParams("not a field dump (bad magic)");
    auto n = static_cast<int>(get<std::uint64_t>(in));
    double length = get<double>(in);
    auto repr = get<std::uint8_t>(in) == 1 ? Repr::Spectral : Repr::Physical;
    GridPtr grid = Grid1D::make(n, length);
    std::vector<cplx> vals(static_cast<size_t>(n));
    for (auto& v : vals) {
        double re = get<double>(in);
        double im = get<double>(in);
        v = cplx{re, im};
    }
    return Field(grid, std::move(vals), repr);
}

} // namespace

void write_field(const Field& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw BadParams("cannot open '" + path + "' for writing");
    write_field_body(out, f);
}

Field read_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BadParams("cannot open '" + path + "'");
    return read_field_body(in);
}

void write_trajectory(const Trajectory& traj, const std::string& path) {
    traj.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw BadParams("cannot open '" + path + "' for writing");
    out.write("DLT1", 4);
    put<std::uint64_t>(out, static_cast<std::uint64_t>(traj.size()));
    put<std::uint8_t>(out, static_cast<std::uint8_t>(traj.components()));
    for (size_t i = 0; i < traj.size(); ++i) {
        put<double>(out, traj.times[i]);
        for (const Field& f : traj.states[i]) write_field_body(out, f);
    }
}

Trajectory read_trajectory(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BadParams("cannot open '" + path + "'");
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "DLT1", 4) != 0)
        throw BadParams("not a trajectory container (bad magic)");
    auto count = get<std::uint64_t>(in);
    auto comps = get<std::uint8_t>(in);
    Trajectory traj;
    for (std::uint64_t i = 0; i < count; ++i) {
        traj.times.push_back(get<double>(in));
        std::vector<Field> st;
        for (int c = 0; c < comps; ++c) st.push_back(read_field_body(in));
        traj.states.push_back(std::move(st));
    }
    return traj;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_field_csv(const Field& f, const std::string& path, const std::string& comment) {
    Field p = f.to_physical();
    CsvWriter csv(path, comment, {"x", "re", "im"});
    for (int j = 0; j < p.n(); ++j)
        csv.row_values({p.grid().x(j), p.values()[static_cast<size_t>(j)].real(),
                        p.values()[static_cast<size_t>(j)].imag()});
    csv.close();
}

CsvWriter::CsvWriter(std::string path, std::string comment, std::vector<std::string> columns)
    : path_(std::move(path)) {
    if (!comment.empty()) buffer_ += "# " + comment + "\n";
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) buffer_ += ",";
        buffer_ += columns[i];
    }
    buffer_ += "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) buffer_ += ",";
        buffer_ += cells[i];
    }
    buffer_ += "\n";
}

void CsvWriter::row_values(const std::vector<double>& cells) {
    std::vector<std::string> s;
    s.reserve(cells.size());
    for (double v : cells) s.push_back(format_double(v));
    row(s);
}

void CsvWriter::close() {
    if (closed_) return;
    std::ofstream out(path_, std::ios::binary);
    if (!out) throw BadParams("cannot open '" + path_ + "' for writing");
    out << buffer_;
    closed_ = true;
}

CsvWriter::~CsvWriter() {
    try {
        close();
    } catch (...) {
        // destructor must not throw
    }
}

} // namespace dlab
