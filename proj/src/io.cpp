#include "gdicke/io.hpp"

#include <array>
#include <cstdio>
#include <optional>
#include <vector>

namespace gdicke {

namespace {

// Field values in header order; nullopt marks an absent value.
struct Row {
  std::string lambda;
  std::string branch;
  std::array<std::optional<std::string>, 6> freq;
  std::string physical;
  std::optional<std::string> energy;
};

Row make_row(const SweepRecord& r) {
  Row row;
  row.lambda = format_number(r.lambda);
  row.branch = std::string(to_string(r.branch));
  if (r.frequencies) {
    for (std::size_t i = 0; i < 3; ++i) {
      row.freq[2 * i] = format_number((*r.frequencies)[i].real());
      row.freq[2 * i + 1] = format_number((*r.frequencies)[i].imag());
    }
  }
  row.physical = r.physical ? "1" : "0";
  if (r.energy_density) row.energy = format_number(*r.energy_density);
  return row;
}

const std::array<const char*, 10> kKeys = {"lambda", "branch", "re_w1", "im_w1", "re_w2",
                                           "im_w2",  "re_w3",  "im_w3", "physical",
                                           "energy_density"};

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", value);
  return buf;
}

void write_csv(std::ostream& out, std::span<const SweepRecord> records) {
  out << kRecordHeader << '\n';
  for (const auto& r : records) {
    const Row row = make_row(r);
    out << row.lambda << ',' << row.branch;
    for (const auto& f : row.freq) out << ',' << f.value_or("");
    out << ',' << row.physical << ',' << row.energy.value_or("") << '\n';
  }
}

void write_json(std::ostream& out, std::span<const SweepRecord> records) {
  out << "[";
  bool first = true;
  for (const auto& r : records) {
    const Row row = make_row(r);
    std::vector<std::string> values;
    values.push_back(row.lambda);
    values.push_back('"' + row.branch + '"');
    for (const auto& f : row.freq) values.push_back(f.value_or("null"));
    values.push_back(row.physical);
    values.push_back(row.energy.value_or("null"));

    out << (first ? "\n  {" : ",\n  {");
    first = false;
    for (std::size_t i = 0; i < kKeys.size(); ++i) {
      out << (i ? ", " : "") << '"' << kKeys[i] << "\": " << values[i];
    }
    out << '}';
  }
  out << (first ? "]\n" : "\n]\n");
}

void write_records(std::ostream& out, std::span<const SweepRecord> records, OutputFormat format) {
  if (format == OutputFormat::Json) {
    write_json(out, records);
  } else {
    write_csv(out, records);
  }
}

}  // namespace gdicke
