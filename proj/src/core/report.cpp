#include "report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "error.hpp"

namespace qll {

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0) return "0";
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string json_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

JsonObject& JsonObject::number(const std::string& key, double v) {
  items_.push_back({key, format_number(v), {}, Item::kScalar});
  return *this;
}
JsonObject& JsonObject::integer(const std::string& key, long long v) {
  items_.push_back({key, std::to_string(v), {}, Item::kScalar});
  return *this;
}
JsonObject& JsonObject::boolean(const std::string& key, bool v) {
  items_.push_back({key, v ? "true" : "false", {}, Item::kScalar});
  return *this;
}
JsonObject& JsonObject::string(const std::string& key, const std::string& v) {
  items_.push_back({key, json_quote(v), {}, Item::kScalar});
  return *this;
}
JsonObject& JsonObject::null(const std::string& key) {
  items_.push_back({key, "null", {}, Item::kScalar});
  return *this;
}
JsonObject& JsonObject::object(const std::string& key, const JsonObject& v) {
  items_.push_back({key, {}, {v}, Item::kObject});
  return *this;
}
JsonObject& JsonObject::numbers(const std::string& key,
                                const std::vector<double>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_number(v[i]);
  }
  items_.push_back({key, s + "]", {}, Item::kScalar});
  return *this;
}
JsonObject& JsonObject::objects(const std::string& key,
                                const std::vector<JsonObject>& v) {
  items_.push_back({key, {}, v, Item::kArray});
  return *this;
}

std::string JsonObject::dump(int indent) const {
  if (items_.empty()) return "{}";
  const std::string pad(indent + 2, ' ');
  std::string out = "{\n";
  for (size_t i = 0; i < items_.size(); ++i) {
    const Item& it = items_[i];
    out += pad + json_quote(it.key) + ": ";
    if (it.kind == Item::kScalar) {
      out += it.scalar;
    } else if (it.kind == Item::kObject) {
      out += it.children.front().dump(indent + 2);
    } else if (it.children.empty()) {
      out += "[]";
    } else {
      out += "[\n";
      for (size_t j = 0; j < it.children.size(); ++j) {
        out += pad + "  " + it.children[j].dump(indent + 4);
        out += j + 1 < it.children.size() ? ",\n" : "\n";
      }
      out += pad + "]";
    }
    out += i + 1 < items_.size() ? ",\n" : "\n";
  }
  return out + std::string(indent, ' ') + "}";
}

CsvTable::CsvTable(std::vector<std::string> header)
    : header_(std::move(header)) {}

void CsvTable::add_row(const std::vector<double>& row) {
  if (row.size() != header_.size())
    fail(ErrorKind::kNumeric, "csv row width does not match header");
  rows_.push_back(row);
}

std::string CsvTable::dump() const {
  std::string out;
  for (size_t i = 0; i < header_.size(); ++i)
    out += (i ? "," : "") + header_[i];
  out += "\n";
  for (const auto& row : rows_) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      if (std::isfinite(row[i])) out += format_number(row[i]);
    }
    out += "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) fail(ErrorKind::kIo, "write to '" + path + "' failed");
}

}  // namespace qll
