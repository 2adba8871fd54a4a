#include "skewrank/serialize.hpp"

#include <fstream>
#include <sstream>

namespace skewrank {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

const Json& need_key(const Json& j, const std::string& where, const std::string& key) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, "missing key \"" + key + "\"");
  return *it;
}

std::int64_t need_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<std::int64_t>();
}

std::string need_string(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

const Json& need_array(const Json& j, const std::string& where, std::size_t size) {
  if (!j.is_array()) fail(where, "expected an array");
  if (j.size() != size)
    fail(where, "expected " + std::to_string(size) + " entries, found " +
                    std::to_string(j.size()));
  return j;
}

FieldElement parse_element(const FieldSpecPtr& field, const Json& j, const std::string& where) {
  std::string s = need_string(j, where);
  try {
    return field->parse(s);
  } catch (const ParseError& e) {
    fail(where, e.what());
  }
}

Scalar parse_scalar(const RingPtr& ring, const Json& j, const std::string& where) {
  int d = ring->dim();
  const Json& arr = need_array(j, where, static_cast<std::size_t>(d));
  Scalar s = ring->zero();
  for (int k = 0; k < d; ++k) {
    s.coords[static_cast<std::size_t>(k)] =
        parse_element(ring->base(), arr[static_cast<std::size_t>(k)],
                      where + "[" + std::to_string(k) + "]");
  }
  return s;
}

Json scalar_to_json(const Scalar& s) {
  const FieldSpecPtr& field = s.ring->base();
  Json arr = Json::array();
  for (const FieldElement& c : s.coords) arr.push_back(field->to_string(c));
  return arr;
}

}  // namespace

Json field_to_json(const FieldSpecPtr& f) {
  Json j;
  switch (f->kind()) {
    case FieldKind::Prime:
      j["type"] = "prime";
      j["p"] = f->characteristic();
      break;
    case FieldKind::Extension: {
      j["type"] = "ext";
      j["p"] = f->characteristic();
      j["k"] = f->degree();
      j["modulus"] = f->modulus_coeffs();
      break;
    }
    case FieldKind::Rationals:
      j["type"] = "rationals";
      break;
  }
  return j;
}

FieldSpecPtr field_from_json(const Json& j) {
  const std::string where = "field";
  std::string type = need_string(need_key(j, where, "type"), where + ".type");
  if (type == "prime") {
    return FieldSpec::prime(need_int(need_key(j, where, "p"), where + ".p"));
  }
  if (type == "ext") {
    std::int64_t p = need_int(need_key(j, where, "p"), where + ".p");
    std::int64_t k = need_int(need_key(j, where, "k"), where + ".k");
    const Json& mj = need_key(j, where, "modulus");
    if (!mj.is_array()) fail(where + ".modulus", "expected an array");
    if (k < 1 || mj.size() != static_cast<std::size_t>(k) + 1)
      fail(where + ".modulus", "expected k + 1 little-endian coefficients");
    std::vector<std::int64_t> modulus;
    for (std::size_t i = 0; i < mj.size(); ++i)
      modulus.push_back(need_int(mj[i], where + ".modulus[" + std::to_string(i) + "]"));
    return FieldSpec::extension(p, static_cast<int>(k), std::move(modulus));
  }
  if (type == "rationals") return FieldSpec::rationals();
  fail(where + ".type", "unknown field type \"" + type + "\"");
}

Json ring_to_json(const RingPtr& r) {
  Json j;
  switch (r->provenance()) {
    case DivisionRingSpec::Provenance::Gf:
      j["type"] = "gf";
      j["p"] = r->gf_p();
      j["k"] = r->gf_k();
      return j;
    case DivisionRingSpec::Provenance::QuaternionQ:
      j["type"] = "quaternion_q";
      return j;
    case DivisionRingSpec::Provenance::Custom:
      break;
  }
  j["type"] = "structure_constants";
  j["base"] = field_to_json(r->base());
  j["d"] = r->dim();
  const FieldSpecPtr& field = r->base();
  int d = r->dim();
  Json table = Json::array();
  for (int i = 0; i < d; ++i) {
    Json ti = Json::array();
    for (int jj = 0; jj < d; ++jj) {
      Json tij = Json::array();
      for (int k = 0; k < d; ++k) tij.push_back(field->to_string(r->c(i, jj, k)));
      ti.push_back(std::move(tij));
    }
    table.push_back(std::move(ti));
  }
  j["table"] = std::move(table);
  j["unit"] = r->unit_index();
  return j;
}

RingPtr ring_from_json(const Json& j) {
  const std::string where = "ring";
  std::string type = need_string(need_key(j, where, "type"), where + ".type");
  if (type == "gf") {
    std::int64_t p = need_int(need_key(j, where, "p"), where + ".p");
    std::int64_t k = j.contains("k") ? need_int(j.at("k"), where + ".k") : 1;
    return DivisionRingSpec::gf(p, static_cast<int>(k));
  }
  if (type == "quaternion_q") return DivisionRingSpec::quaternions();
  if (type == "structure_constants") {
    FieldSpecPtr base = field_from_json(need_key(j, where, "base"));
    std::int64_t d64 = need_int(need_key(j, where, "d"), where + ".d");
    if (d64 < 1 || d64 > 64) fail(where + ".d", "dimension out of range");
    int d = static_cast<int>(d64);
    const Json& tj = need_array(need_key(j, where, "table"), where + ".table",
                                static_cast<std::size_t>(d));
    std::vector<FieldElement> table;
    table.reserve(static_cast<std::size_t>(d) * d * d);
    for (int i = 0; i < d; ++i) {
      std::string wi = where + ".table[" + std::to_string(i) + "]";
      const Json& ti = need_array(tj[static_cast<std::size_t>(i)], wi,
                                  static_cast<std::size_t>(d));
      for (int jj = 0; jj < d; ++jj) {
        std::string wij = wi + "[" + std::to_string(jj) + "]";
        const Json& tij = need_array(ti[static_cast<std::size_t>(jj)], wij,
                                     static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k) {
          table.push_back(parse_element(base, tij[static_cast<std::size_t>(k)],
                                        wij + "[" + std::to_string(k) + "]"));
        }
      }
    }
    std::int64_t unit = need_int(need_key(j, where, "unit"), where + ".unit");
    if (unit < 0 || unit >= d) fail(where + ".unit", "unit index out of range");
    return DivisionRingSpec::make(std::move(base), d, std::move(table), static_cast<int>(unit));
  }
  fail(where + ".type", "unknown ring type \"" + type + "\"");
}

Json matrix_to_json(const Matrix& m) {
  Json arr = Json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int jj = 0; jj < m.cols(); ++jj) arr.push_back(scalar_to_json(m.at(i, jj)));
  return arr;
}

Matrix matrix_from_json(const RingPtr& ring, int n, int p, const Json& j) {
  const std::string where = "matrix";
  const Json& arr = need_array(j, where, static_cast<std::size_t>(n) * static_cast<std::size_t>(p));
  Matrix m(ring, n, p);
  for (int i = 0; i < n; ++i) {
    for (int jj = 0; jj < p; ++jj) {
      std::size_t idx = static_cast<std::size_t>(i) * p + jj;
      m.at(i, jj) = parse_scalar(ring, arr[idx], where + "[" + std::to_string(idx) + "]");
    }
  }
  return m;
}

Json space_to_json(const AffineMatrixSpace& s) {
  Json j;
  j["ring"] = ring_to_json(s.ring());
  j["n"] = s.n();
  j["p"] = s.p();
  j["offset"] = matrix_to_json(s.offset());
  Json basis = Json::array();
  for (const Matrix& b : s.basis()) basis.push_back(matrix_to_json(b));
  j["basis"] = std::move(basis);
  return j;
}

AffineMatrixSpace space_from_json(const Json& j) {
  const std::string where = "space";
  RingPtr ring = ring_from_json(need_key(j, where, "ring"));
  std::int64_t n = need_int(need_key(j, where, "n"), where + ".n");
  std::int64_t p = need_int(need_key(j, where, "p"), where + ".p");
  if (n < 1 || p < 1 || n > 64 || p > 64) fail(where, "shape out of range");
  Matrix offset = matrix_from_json(ring, static_cast<int>(n), static_cast<int>(p),
                                   need_key(j, where, "offset"));
  const Json& bj = need_key(j, where, "basis");
  if (!bj.is_array()) fail(where + ".basis", "expected an array");
  std::vector<Matrix> gens;
  gens.reserve(bj.size());
  for (std::size_t t = 0; t < bj.size(); ++t)
    gens.push_back(matrix_from_json(ring, static_cast<int>(n), static_cast<int>(p), bj[t]));
  return AffineMatrixSpace::reduce(std::move(offset), gens);
}

Json classification_to_json(const ClassificationResult& res) {
  Json j;
  j["tag"] = tag_string(res.tag);
  j["P"] = res.p ? matrix_to_json(*res.p) : Json();
  j["Q"] = res.q ? matrix_to_json(*res.q) : Json();
  j["witness"] = res.witness ? matrix_to_json(*res.witness) : Json();
  return j;
}

ClassificationResult classification_from_json(const RingPtr& ring, int n, int p, const Json& j) {
  const std::string where = "classification";
  std::string tag = need_string(need_key(j, where, "tag"), where + ".tag");
  ClassificationResult res;
  if (tag == "a") {
    res.tag = Tag::CompressionColumns;
  } else if (tag == "b") {
    res.tag = Tag::CompressionRows;
  } else if (tag == "c") {
    res.tag = Tag::ExceptionalU2;
  } else if (tag == "not_maximal") {
    res.tag = Tag::NotMaximal;
  } else if (tag == "not_bounded") {
    res.tag = Tag::NotBoundedRank;
  } else {
    fail(where + ".tag", "unknown tag \"" + tag + "\"");
  }
  const Json& pj = need_key(j, where, "P");
  const Json& qj = need_key(j, where, "Q");
  const Json& wj = need_key(j, where, "witness");
  if (!pj.is_null()) res.p = matrix_from_json(ring, n, n, pj);
  if (!qj.is_null()) res.q = matrix_from_json(ring, p, p, qj);
  if (!wj.is_null()) res.witness = matrix_from_json(ring, n, p, wj);
  return res;
}

std::string ring_brief(const RingPtr& r) {
  switch (r->provenance()) {
    case DivisionRingSpec::Provenance::Gf:
      if (r->gf_k() == 1) return "gf:" + std::to_string(r->gf_p());
      return "gf:" + std::to_string(r->gf_p()) + ":" + std::to_string(r->gf_k());
    case DivisionRingSpec::Provenance::QuaternionQ:
      return "quaternion_q";
    case DivisionRingSpec::Provenance::Custom:
      break;
  }
  return "custom:d=" + std::to_string(r->dim());
}

Json census_report_to_json(const CensusReport& rep) {
  Json j;
  j["kind"] = rep.kind;
  j["ring"] = ring_to_json(rep.ring);
  j["n"] = rep.n;
  j["p"] = rep.p;
  j["r"] = rep.r;
  j["layer_dim"] = rep.layer_dim;
  j["mode"] = rep.mode;
  j["seed"] = rep.seed ? Json(*rep.seed) : Json();
  j["trials"] = rep.trials;
  j["predicted"] = rep.predicted.str();
  j["examined"] = rep.examined;
  j["violations"] = rep.violations;
  j["rank_bounded"] = rep.rank_bounded;
  j["tag_a"] = rep.tag_a;
  j["tag_b"] = rep.tag_b;
  j["tag_c"] = rep.tag_c;
  j["bound_predicted"] = rep.bound_predicted.str();
  j["bound_examined"] = rep.bound_examined;
  return j;
}

std::string census_report_to_csv(const CensusReport& rep) {
  std::ostringstream out;
  out << "kind,ring,n,p,r,layer_dim,mode,seed,trials,predicted,examined,violations,"
         "rank_bounded,tag_a,tag_b,tag_c,bound_predicted,bound_examined\n";
  out << rep.kind << ',' << ring_brief(rep.ring) << ',' << rep.n << ',' << rep.p << ',' << rep.r
      << ',' << rep.layer_dim << ',' << rep.mode << ',';
  if (rep.seed) out << *rep.seed;
  out << ',' << rep.trials << ',' << rep.predicted.str() << ',' << rep.examined << ','
      << rep.violations << ',' << rep.rank_bounded << ',' << rep.tag_a << ',' << rep.tag_b << ','
      << rep.tag_c << ',' << rep.bound_predicted.str() << ',' << rep.bound_examined << '\n';
  return out.str();
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("json syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_json_text(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw ParseError("write to " + path + " failed");
}

}  // namespace skewrank
