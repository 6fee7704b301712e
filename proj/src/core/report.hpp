#pragma once

// Deterministic JSON / CSV output: fixed key order, doubles at 17
// significant digits, non-finite values as null (JSON) or empty (CSV).

#include <string>
#include <utility>
#include <vector>

namespace qll {

std::string format_number(double v);

class JsonObject {
 public:
  JsonObject& number(const std::string& key, double v);
  JsonObject& integer(const std::string& key, long long v);
  JsonObject& boolean(const std::string& key, bool v);
  JsonObject& string(const std::string& key, const std::string& v);
  JsonObject& null(const std::string& key);
  JsonObject& object(const std::string& key, const JsonObject& v);
  JsonObject& numbers(const std::string& key, const std::vector<double>& v);
  JsonObject& objects(const std::string& key,
                      const std::vector<JsonObject>& v);

  bool empty() const { return items_.empty(); }
  std::string dump(int indent = 0) const;

 private:
  struct Item {
    std::string key;
    std::string scalar;  // rendered value, unless nested
    std::vector<JsonObject> children;
    enum Kind { kScalar, kObject, kArray } kind = kScalar;
  };
  std::vector<Item> items_;
};

std::string json_quote(const std::string& s);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(const std::vector<double>& row);
  std::string dump() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

// Throws an io error when the file cannot be written.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qll
