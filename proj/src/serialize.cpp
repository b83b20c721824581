#include "hypcone/serialize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hypcone/error.hpp"

namespace hypcone {
namespace {

void write_string(std::ostringstream& out, const std::string& s) { out << Json(s).dump(); }

void write(std::ostringstream& out, const Json& j, int indent) {
  const std::string pad(indent * 2, ' '), inner((indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {  // std::map keeps keys sorted
        if (!first) out << ",\n";
        first = false;
        out << inner;
        write_string(out, key);
        out << ": ";
        write(out, value, indent + 1);
      }
      out << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      if (flat) {
        out << "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) out << ", ";
          write(out, j[k], indent + 1);
        }
        out << "]";
        return;
      }
      out << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out << ",\n";
        out << inner;
        write(out, j[k], indent + 1);
      }
      out << "\n" << pad << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>() + 0.0;  // folds −0 into 0
      if (!std::isfinite(x)) {
        out << "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      std::string s = buf;
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      out << s;
      return;
    }
    default:
      out << j.dump();
  }
}

[[noreturn]] void bad(const std::string& where, const std::string& field, const std::string& message) {
  throw Error(ErrorKind::InvalidInput, message, where.empty() ? field : where + "." + field);
}

double number(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) bad(where, key, std::string("missing field ") + key);
  if (!j[key].is_number()) bad(where, key, std::string(key) + " must be a number");
  return j[key].get<double>();
}

Complex complex_from(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    bad({}, field, "complex numbers are [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string dump_json(const Json& j) {
  std::ostringstream out;
  write(out, j, 0);
  out << "\n";
  return out.str();
}

std::string shortest(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Isometry& g) { return Json::array({to_json(g.a()), to_json(g.b()), to_json(g.c()), to_json(g.d())}); }

Json to_json(const Tube& t) {
  return {{"sigma", t.sigma()}, {"delta", t.delta()}, {"theta", t.theta()}, {"tau", t.tau()}, {"K", t.curvature()}};
}

Json to_json(const FinitePointedMetricSpace& s) {
  return {{"labels", s.labels()}, {"matrix", s.matrix()}, {"basepoint", s.basepoint()}};
}

Json to_json(const Relation& r) {
  Json out = Json::array();
  for (const auto& [a, b] : r) out.push_back({a, b});
  return out;
}

Isometry isometry_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4) bad({}, "isometry", "an isometry is four [re, im] entries");
  return Isometry(complex_from(j[0], "a"), complex_from(j[1], "b"), complex_from(j[2], "c"), complex_from(j[3], "d"));
}

Tube tube_from_json(const Json& j) {
  if (!j.is_object()) bad({}, "tube", "a tube is a JSON object");
  const double tau = j.contains("tau") ? number(j, "tau", {}) : 0.0;
  const double k = j.contains("K") ? number(j, "K", {}) : -1.0;
  return Tube(number(j, "sigma", {}), number(j, "delta", {}), number(j, "theta", {}), tau, k);
}

FinitePointedMetricSpace space_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) bad(where, "space", "a metric space is a JSON object");
  if (!j.contains("matrix") || !j["matrix"].is_array()) bad(where, "matrix", "missing distance matrix");
  std::vector<std::vector<double>> m;
  for (const auto& row : j["matrix"]) {
    if (!row.is_array()) bad(where, "matrix", "matrix rows must be arrays");
    std::vector<double> r;
    for (const auto& v : row) {
      if (!v.is_number()) bad(where, "matrix", "distances must be numbers");
      r.push_back(v.get<double>());
    }
    m.push_back(std::move(r));
  }
  int base = 0;
  if (j.contains("basepoint")) {
    if (!j["basepoint"].is_number_integer()) bad(where, "basepoint", "basepoint must be an integer");
    base = j["basepoint"].get<int>();
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) bad(where, "labels", "labels must be an array");
    for (const auto& l : j["labels"]) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
  } else {
    for (std::size_t k = 0; k < m.size(); ++k) labels.push_back(std::to_string(k));
  }
  try {
    return FinitePointedMetricSpace(std::move(labels), std::move(m), base);
  } catch (const Error& e) {
    bad(where, e.field(), e.what());
  }
}

Relation relation_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "relation", "a relation is an array of [i, j] pairs");
  Relation r;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer()) {
      bad(where, "relation", "a relation is an array of [i, j] pairs");
    }
    r.emplace_back(p[0].get<int>(), p[1].get<int>());
  }
  return r;
}

}  // namespace hypcone
