#include "freqbin/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>

#include "freqbin/errors.hpp"

namespace freqbin {

namespace {

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream f(path, mode);
    if (!f) throw Error("cannot open output file: " + path);
    return f;
}

void put_sci(std::ofstream& f, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17e", v);
    f << buf;
}

}  // namespace

void write_matrix_csv(const std::string& path, const RealMatrix& m,
                      const std::vector<double>& axis_a_hz, const std::vector<double>& axis_b_hz) {
    if (m.rows() != static_cast<Eigen::Index>(axis_a_hz.size()) ||
        m.cols() != static_cast<Eigen::Index>(axis_b_hz.size()))
        throw InvalidInput("matrix/axis shape mismatch");
    auto f = open_out(path);
    f << m.rows();
    for (double w : axis_b_hz) {
        f << ',';
        put_sci(f, w);
    }
    f << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        put_sci(f, axis_a_hz[static_cast<std::size_t>(i)]);
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            f << ',';
            put_sci(f, m(i, j));
        }
        f << '\n';
    }
}

void write_columns_csv(const std::string& path, const std::vector<std::string>& headers,
                       const std::vector<const std::vector<double>*>& columns) {
    if (headers.size() != columns.size() || columns.empty())
        throw InvalidInput("header/column count mismatch");
    const std::size_t rows = columns.front()->size();
    for (const auto* c : columns)
        if (c->size() != rows) throw InvalidInput("column length mismatch");
    auto f = open_out(path);
    for (std::size_t c = 0; c < headers.size(); ++c) f << (c ? "," : "") << headers[c];
    f << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) f << ',';
            put_sci(f, (*columns[c])[r]);
        }
        f << '\n';
    }
}

void write_events_binary(const std::string& path, const std::vector<EventRecord>& events) {
    auto f = open_out(path, std::ios::out | std::ios::binary);
    for (const auto& e : events) {
        const auto ps = static_cast<std::int64_t>(std::llround(e.time * 1e12));
        unsigned char rec[10];
        rec[0] = e.node;
        rec[1] = static_cast<unsigned char>(e.channel);
        for (int b = 0; b < 8; ++b)
            rec[2 + b] = static_cast<unsigned char>((static_cast<std::uint64_t>(ps) >> (8 * b)) & 0xFF);
        f.write(reinterpret_cast<const char*>(rec), sizeof rec);
    }
}

std::vector<EventRecord> read_events_binary(const std::string& path) {
    std::ifstream f(path, std::ios::in | std::ios::binary);
    if (!f) throw Error("cannot open event file: " + path);
    std::vector<EventRecord> events;
    unsigned char rec[10];
    while (f.read(reinterpret_cast<char*>(rec), sizeof rec)) {
        std::uint64_t raw = 0;
        for (int b = 0; b < 8; ++b) raw |= static_cast<std::uint64_t>(rec[2 + b]) << (8 * b);
        EventRecord e;
        e.node = rec[0];
        e.channel = static_cast<Channel>(rec[1]);
        e.time = static_cast<double>(static_cast<std::int64_t>(raw)) * 1e-12;
        events.push_back(e);
    }
    return events;
}

void write_events_csv(const std::string& path, const std::vector<EventRecord>& events) {
    auto f = open_out(path);
    f << "node,channel,time_s\n";
    for (const auto& e : events) {
        f << int(e.node) << ',' << int(static_cast<std::uint8_t>(e.channel)) << ',';
        put_sci(f, e.time);
        f << '\n';
    }
}

nlohmann::json to_json(const SchmidtResult& r) {
    nlohmann::json j;
    j["coefficients"] = r.coefficients;
    j["schmidt_number"] = r.schmidt_number;
    j["purity"] = r.purity;
    j["modes_retained"] = r.modes_retained;
    j["dimension_proxy"] = r.schmidt_number * r.schmidt_number;
    if (r.from_intensity)
        j["warning"] =
            "amplitude was reconstructed from intensity data with a flat phase; "
            "phase structure is not reflected in these coefficients";
    return j;
}

nlohmann::json to_json(const BinReport& r) {
    nlohmann::json j;
    j["centers_hz"] = r.centers_hz;
    j["fwhm_hz"] = r.fwhm_hz;
    j["spacing_hz"] = r.spacing_hz;
    j["count"] = r.count;
    j["single_peak"] = r.single_peak;
    return j;
}

nlohmann::json to_json(const FringeMetrics& m) {
    nlohmann::json j;
    j["period_s"] = m.period;
    j["visibility"] = m.visibility;
    j["central_extremum"] = m.central == CentralExtremum::dip ? "dip" : "peak";
    return j;
}

void write_json(const std::string& path, const nlohmann::json& j) {
    auto f = open_out(path);
    f << j.dump(2) << '\n';
}

}  // namespace freqbin
