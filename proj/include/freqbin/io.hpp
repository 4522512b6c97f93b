#ifndef FREQBIN_IO_HPP
#define FREQBIN_IO_HPP

#include <string>
#include <vector>

// vendored nlohmann/json single header
#include "json.hpp"

#include "freqbin/analysis.hpp"
#include "freqbin/detection.hpp"
#include "freqbin/grid.hpp"
#include "freqbin/hom.hpp"

namespace freqbin {

// Matrix CSV with an axis header row/column in Hz; [0,0] holds the row count.
void write_matrix_csv(const std::string& path, const RealMatrix& m,
                      const std::vector<double>& axis_a_hz, const std::vector<double>& axis_b_hz);

// Column-oriented CSV, full-precision scientific notation, units in headers.
void write_columns_csv(const std::string& path, const std::vector<std::string>& headers,
                       const std::vector<const std::vector<double>*>& columns);

// Binary event record stream: node u8, channel u8, timestamp as little-endian
// signed 64-bit picoseconds.
void write_events_binary(const std::string& path, const std::vector<EventRecord>& events);
std::vector<EventRecord> read_events_binary(const std::string& path);

void write_events_csv(const std::string& path, const std::vector<EventRecord>& events);

nlohmann::json to_json(const SchmidtResult& r);
nlohmann::json to_json(const BinReport& r);
nlohmann::json to_json(const FringeMetrics& m);

void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace freqbin

#endif
