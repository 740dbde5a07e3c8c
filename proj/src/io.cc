#include "absnorm/io.h"

#include <fstream>
#include <sstream>

namespace absnorm {

namespace {

std::size_t dimension(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  const auto& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw FormatError(std::string("field \"") + key + "\" must be a nonnegative integer");
  return v.get<std::size_t>();
}

Vector vector_field(const Json& doc, const char* key, std::size_t size) {
  if (!doc.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  const auto& v = doc.at(key);
  if (!v.is_array() || v.size() != size)
    throw FormatError(std::string("field \"") + key + "\" must be an array of length " +
                      std::to_string(size));
  Vector out;
  out.reserve(size);
  for (const auto& e : v) {
    if (!e.is_number()) throw FormatError(std::string("field \"") + key + "\" holds a non-number");
    out.push_back(e.get<double>());
  }
  return out;
}

Matrix matrix_field(const Json& doc, const char* key, std::size_t rows,
                    std::size_t cols) {
  if (!doc.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  const auto& v = doc.at(key);
  const std::string shape = std::to_string(rows) + " x " + std::to_string(cols);
  if (!v.is_array() || v.size() != rows)
    throw FormatError(std::string("field \"") + key + "\" must be " + shape);
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& r = v[i];
    if (!r.is_array() || r.size() != cols)
      throw FormatError(std::string("field \"") + key + "\" must be " + shape);
    for (std::size_t j = 0; j < cols; ++j) {
      if (!r[j].is_number())
        throw FormatError(std::string("field \"") + key + "\" holds a non-number");
      out(i, j) = r[j].get<double>();
    }
  }
  return out;
}

Json to_json(std::span<const double> v) { return Json(Vector(v.begin(), v.end())); }

}  // namespace

AbsNormalForm anf_from_json(const Json& doc) {
  if (!doc.is_object()) throw FormatError("document must be a JSON object");
  const std::size_t n = dimension(doc, "n");
  const std::size_t m = dimension(doc, "m");
  const std::size_t s = dimension(doc, "s");
  try {
    return AbsNormalForm(vector_field(doc, "c", s), vector_field(doc, "b", m),
                         matrix_field(doc, "Z", s, n), matrix_field(doc, "L", s, s),
                         matrix_field(doc, "J", m, n), matrix_field(doc, "Y", m, s));
  } catch (const FormatError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

Json to_json(const Matrix& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(to_json(a.row(i)));
  return rows;
}

Json anf_to_json(const AbsNormalForm& form) {
  Json doc = Json::object();
  doc["n"] = form.n();
  doc["m"] = form.m();
  doc["s"] = form.s();
  doc["c"] = form.c();
  doc["b"] = form.b();
  doc["Z"] = to_json(form.Z());
  doc["L"] = to_json(form.L());
  doc["J"] = to_json(form.J());
  doc["Y"] = to_json(form.Y());
  return doc;
}

AbsNormalForm parse_anf(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
  return anf_from_json(doc);
}

std::string serialize_anf(const AbsNormalForm& form) {
  return anf_to_json(form).dump(2) + "\n";
}

AbsNormalForm read_anf_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_anf(ss.str());
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

Json to_json(const LcpProblem& p) {
  return {{"M", to_json(p.M)}, {"q", p.q}};
}

Json to_json(const MlcpProblem& p) {
  return {{"eq_const", p.eq_const}, {"eq_x", to_json(p.eq_x)},
          {"eq_w", to_json(p.eq_w)}, {"comp_const", p.comp_const},
          {"comp_x", to_json(p.comp_x)}, {"comp_w", to_json(p.comp_w)}};
}

Json to_json(const LpccProblem& p) {
  return {{"obj_const", p.obj_const}, {"obj_x", p.obj_x},
          {"obj_w", p.obj_w}, {"comp_const", p.comp_const},
          {"comp_x", to_json(p.comp_x)}, {"comp_w", to_json(p.comp_w)}};
}

Json to_json(const MilpProblem& p) {
  return {{"lpcc", to_json(p.lpcc)}, {"mu", p.mu}};
}

}  // namespace absnorm
