#pragma once

#include <ostream>
#include <span>
#include <string>

#include "gdicke/criticality.hpp"

namespace gdicke {

enum class OutputFormat { Csv, Json };

/// Column order shared by the CSV header and the JSON object keys.
inline constexpr const char* kRecordHeader =
    "lambda,branch,re_w1,im_w1,re_w2,im_w2,re_w3,im_w3,physical,energy_density";

/// Scientific notation with 9 significant digits, e.g. 7.07106781e-01.
/// Negative zero is written as 0.00000000e+00.
std::string format_number(double value);

void write_csv(std::ostream& out, std::span<const SweepRecord> records);

/// Array of flat objects with the CSV keys; absent values are null and numbers
/// use the same text as the CSV.
void write_json(std::ostream& out, std::span<const SweepRecord> records);

void write_records(std::ostream& out, std::span<const SweepRecord> records, OutputFormat format);

}  // namespace gdicke
