#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace floorsum::cli {

enum class Status { Ok, CheckFailed, Error };

std::string_view status_name(Status s);

using Fields = std::vector<std::pair<std::string, std::string>>;

// One logical result. Numeric values are carried as decimal strings so the
// JSON and CSV projections print identical characters.
struct OutputRecord {
  std::string command;
  Fields inputs;
  Fields outputs;
  std::uint64_t elapsed_ms = 0;
  Status status = Status::Ok;

  OutputRecord& input(std::string key, std::string value);
  OutputRecord& output(std::string key, std::string value);
  const std::string* find_output(std::string_view key) const;

  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

// Shortest decimal string that round-trips the double.
std::string format_real(double v);

std::string to_json_line(const OutputRecord& r);
OutputRecord from_json_line(std::string_view line);

// RFC 4180 field quoting.
std::string csv_escape(std::string_view field);

enum class Format { Json, Csv };

// JSON records stream immediately; CSV rows are buffered so that every row of
// an invocation shares one header with columns in first-seen order.
class RecordWriter {
 public:
  RecordWriter(std::ostream& out, Format format) : out_(out), format_(format) {}
  ~RecordWriter();
  RecordWriter(const RecordWriter&) = delete;
  RecordWriter& operator=(const RecordWriter&) = delete;

  void write(const OutputRecord& r);
  void finish();

 private:
  std::ostream& out_;
  Format format_;
  std::vector<OutputRecord> pending_;
  bool finished_ = false;
};

}  // namespace floorsum::cli
