#include <algorithm>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "floorsum/errors.hpp"
#include "floorsum/record.hpp"

namespace floorsum::cli {

using json = nlohmann::ordered_json;

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::CheckFailed: return "check_failed";
    case Status::Error: return "error";
  }
  return "error";
}

namespace {

Status parse_status(std::string_view s) {
  if (s == "ok") return Status::Ok;
  if (s == "check_failed") return Status::CheckFailed;
  if (s == "error") return Status::Error;
  throw ParseError(fmt::format("unknown status '{}'", s));
}

void set_field(Fields& fields, std::string key, std::string value) {
  auto it = std::find_if(fields.begin(), fields.end(), [&](const auto& f) { return f.first == key; });
  if (it != fields.end())
    it->second = std::move(value);
  else
    fields.emplace_back(std::move(key), std::move(value));
}

}  // namespace

OutputRecord& OutputRecord::input(std::string key, std::string value) {
  set_field(inputs, std::move(key), std::move(value));
  return *this;
}

OutputRecord& OutputRecord::output(std::string key, std::string value) {
  set_field(outputs, std::move(key), std::move(value));
  return *this;
}

const std::string* OutputRecord::find_output(std::string_view key) const {
  for (const auto& [k, v] : outputs)
    if (k == key) return &v;
  return nullptr;
}

std::string format_real(double v) { return fmt::format("{}", v); }

std::string to_json_line(const OutputRecord& r) {
  json j;
  j["command"] = r.command;
  json in = json::object();
  for (const auto& [k, v] : r.inputs) in[k] = v;
  json out = json::object();
  for (const auto& [k, v] : r.outputs) out[k] = v;
  j["inputs"] = std::move(in);
  j["outputs"] = std::move(out);
  j["elapsed_ms"] = r.elapsed_ms;
  j["status"] = status_name(r.status);
  return j.dump();
}

OutputRecord from_json_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  OutputRecord r;
  try {
    r.command = j.at("command").get<std::string>();
    for (const auto& [k, v] : j.at("inputs").items()) r.inputs.emplace_back(k, v.get<std::string>());
    for (const auto& [k, v] : j.at("outputs").items()) r.outputs.emplace_back(k, v.get<std::string>());
    r.elapsed_ms = j.at("elapsed_ms").get<std::uint64_t>();
    r.status = parse_status(j.at("status").get<std::string>());
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  return r;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

RecordWriter::~RecordWriter() {
  try {
    finish();
  } catch (...) {
  }
}

void RecordWriter::write(const OutputRecord& r) {
  if (format_ == Format::Json) {
    out_ << to_json_line(r) << '\n';
    out_.flush();
  } else {
    pending_.push_back(r);
  }
}

void RecordWriter::finish() {
  if (finished_) return;
  finished_ = true;
  if (format_ != Format::Csv || pending_.empty()) return;

  std::vector<std::string> columns{"command", "status", "elapsed_ms"};
  auto add_column = [&](std::string name) {
    if (std::find(columns.begin(), columns.end(), name) == columns.end()) columns.push_back(std::move(name));
  };
  for (const auto& r : pending_) {
    for (const auto& f : r.inputs) add_column("in." + f.first);
    for (const auto& f : r.outputs) add_column("out." + f.first);
  }

  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << csv_escape(columns[i]);
  out_ << "\r\n";
  for (const auto& r : pending_) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const std::string& c = columns[i];
      std::string cell;
      if (c == "command") {
        cell = r.command;
      } else if (c == "status") {
        cell = status_name(r.status);
      } else if (c == "elapsed_ms") {
        cell = std::to_string(r.elapsed_ms);
      } else {
        const bool is_input = c.starts_with("in.");
        const std::string key = c.substr(is_input ? 3 : 4);
        for (const auto& [k, v] : is_input ? r.inputs : r.outputs)
          if (k == key) cell = v;
      }
      out_ << (i ? "," : "") << csv_escape(cell);
    }
    out_ << "\r\n";
  }
  out_.flush();
}

}  // namespace floorsum::cli
