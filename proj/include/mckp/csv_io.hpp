#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mckp/model.hpp"

namespace mckp {

// Shortest round-trip formatting; keeps generated files byte-stable.
inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  double back = 0.0;
  std::sscanf(buf, "%lf", &back);
  if (back == x) {
    // try shorter representations that still round-trip
    for (int prec = 1; prec < 17; ++prec) {
      char s[64];
      std::snprintf(s, sizeof(s), "%.*g", prec, x);
      std::sscanf(s, "%lf", &back);
      if (back == x) return s;
    }
  }
  return buf;
}

namespace detail {

inline std::vector<std::string_view> split_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::int64_t parse_int(std::string_view field, std::size_t line_no,
                              const char* column) {
  field = trim(field);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": bad " + column +
                     " '" + std::string(field) + "'");
  }
  return v;
}

inline double parse_double(std::string_view field, std::size_t line_no,
                           const char* column) {
  field = trim(field);
  const std::string s(field);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": bad " + column +
                     " '" + s + "'");
  }
  if (!std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line_no) + ": non-finite " +
                     column + " '" + s + "'");
  }
  return v;
}

}  // namespace detail

// Reads the instance format `customer_id,promotion_id,value,weight` (header
// required). Arrival order is first-appearance order of customer_id; rows of
// one customer need not be contiguous. Non-finite predictions are rejected.
inline Instance load_instance_csv(std::istream& in, double capacity = 0.0,
                                  bool auto_insert_base = true) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty input, header required");
  if (detail::trim(line) != "customer_id,promotion_id,value,weight") {
    throw ParseError("bad header '" + line +
                     "', expected customer_id,promotion_id,value,weight");
  }
  std::vector<OfferSet> sets;
  std::unordered_map<std::int64_t, std::size_t> index;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_line(line);
    if (fields.size() != 4) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 4 " +
                       "columns, got " + std::to_string(fields.size()));
    }
    const std::int64_t customer =
        detail::parse_int(fields[0], line_no, "customer_id");
    Item item;
    item.promotion_id = detail::parse_int(fields[1], line_no, "promotion_id");
    if (item.promotion_id < 0) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": negative promotion_id");
    }
    item.value = detail::parse_double(fields[2], line_no, "value");
    item.weight = detail::parse_double(fields[3], line_no, "weight");
    auto it = index.find(customer);
    if (it == index.end()) {
      index.emplace(customer, sets.size());
      sets.push_back(OfferSet{customer, {item}});
    } else {
      sets[it->second].items.push_back(item);
    }
  }
  return Instance(std::move(sets), capacity, auto_insert_base);
}

inline Instance load_instance_csv_file(const std::string& path,
                                       double capacity = 0.0,
                                       bool auto_insert_base = true) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return load_instance_csv(in, capacity, auto_insert_base);
}

inline void write_instance_csv(const Instance& instance, std::ostream& out) {
  out << "customer_id,promotion_id,value,weight\n";
  for (const OfferSet& os : instance.offer_sets()) {
    for (const Item& it : os.items) {
      out << os.customer_id << ',' << it.promotion_id << ','
          << format_double(it.value) << ',' << format_double(it.weight)
          << '\n';
    }
  }
}

inline std::string instance_to_csv(const Instance& instance) {
  std::ostringstream os;
  write_instance_csv(instance, os);
  return os.str();
}

// Assignment output, one row per customer in arrival order.
inline void write_assignment_csv(const Instance& instance,
                                 const Assignment& assignment,
                                 std::ostream& out) {
  out << "customer_id,promotion_id\n";
  for (const OfferSet& os : instance.offer_sets()) {
    auto it = assignment.choices.find(os.customer_id);
    if (it == assignment.choices.end()) {
      throw InvalidAssignmentError("assignment misses customer " +
                                   std::to_string(os.customer_id));
    }
    out << os.customer_id << ',' << it->second << '\n';
  }
}

inline Assignment load_assignment_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty input, header required");
  if (detail::trim(line) != "customer_id,promotion_id") {
    throw ParseError("bad header '" + line +
                     "', expected customer_id,promotion_id");
  }
  Assignment a;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_line(line);
    if (fields.size() != 2) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 2 columns");
    }
    const std::int64_t customer =
        detail::parse_int(fields[0], line_no, "customer_id");
    const std::int64_t promo =
        detail::parse_int(fields[1], line_no, "promotion_id");
    a.choices[customer] = promo;
  }
  return a;
}

}  // namespace mckp
