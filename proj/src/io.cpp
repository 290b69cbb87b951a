#include "shiftlab/io.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace shiftlab::io {

namespace {

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' || c == '[';
  }
  return false;
}

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(origin + ": invalid JSON at byte " + std::to_string(e.byte));
  }
}

Integer entry_from_json(const Json& x, const std::string& where) {
  Integer v;
  if (x.is_number_unsigned()) {
    v = Integer(std::to_string(x.get<std::uint64_t>()));
  } else if (x.is_number_integer()) {
    v = Integer(std::to_string(x.get<std::int64_t>()));
  } else if (x.is_string()) {
    const std::string s = x.get<std::string>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw InputError(where + ": expected a nonnegative integer, got \"" + s + "\"");
    v = Integer(s);
  } else {
    throw InputError(where + ": expected a nonnegative integer");
  }
  if (sgn(v) < 0) throw InputError(where + ": negative entry " + v.get_str());
  return v;
}

std::size_t count_from_json(const Json& j, const char* key, const std::string& origin) {
  if (!j.contains(key)) throw InputError(origin + ": missing \"" + key + "\"");
  const Json& x = j.at(key);
  if (!x.is_number_unsigned() && !(x.is_number_integer() && x.get<std::int64_t>() >= 0))
    throw InputError(origin + ": \"" + key + "\" must be a nonnegative integer");
  return x.get<std::size_t>();
}

IntMatrix full_shift(std::size_t k) {
  IntMatrix A(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) A(i, j) = 1;
  return A;
}

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream outf(path, std::ios::binary);
  if (!outf) throw InputError(path + ": cannot write file");
  outf << contents;
}

Json integer_to_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

IntMatrix matrix_from_json(const Json& j, const std::string& where) {
  const Json* rows = &j;
  std::string at = where;
  if (j.is_object()) {
    if (!j.contains("rows")) throw InputError(where + ": missing \"rows\"");
    rows = &j.at("rows");
    at = where + ": rows";
  }
  if (!rows->is_array()) throw InputError(at + ": expected an array of rows");
  std::vector<std::vector<Integer>> data;
  for (std::size_t i = 0; i < rows->size(); ++i) {
    const Json& row = (*rows)[i];
    const std::string ri = at + "[" + std::to_string(i) + "]";
    if (!row.is_array()) throw InputError(ri + ": expected an array");
    std::vector<Integer> r;
    for (std::size_t k = 0; k < row.size(); ++k) r.push_back(entry_from_json(row[k], ri + "[" + std::to_string(k) + "]"));
    if (!data.empty() && r.size() != data.front().size())
      throw InputError(ri + ": has " + std::to_string(r.size()) + " entries, expected " +
                       std::to_string(data.front().size()));
    data.push_back(std::move(r));
  }
  IntMatrix m(data.size(), data.empty() ? 0 : data.front().size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = data[i][k];
  return m;
}

Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(integer_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixFile parse_matrix(const std::string& text, const std::string& origin) {
  MatrixFile f;
  f.name = stem(origin);
  if (looks_like_json(text)) {
    const Json j = parse_json(text, origin);
    if (j.is_object() && j.contains("name")) {
      if (!j.at("name").is_string()) throw InputError(origin + ": \"name\" must be a string");
      f.name = j.at("name").get<std::string>();
    }
    f.matrix = matrix_from_json(j, origin);
    return f;
  }

  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<Integer>> data;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<Integer> row;
    std::string tok;
    while (ls >> tok) {
      if (tok.find_first_not_of("0123456789") != std::string::npos)
        throw InputError(origin + ":" + std::to_string(lineno) + ": expected a nonnegative integer, got \"" + tok + "\"");
      row.emplace_back(tok);
    }
    if (row.empty()) continue;
    if (!data.empty() && row.size() != data.front().size())
      throw InputError(origin + ":" + std::to_string(lineno) + ": row has " + std::to_string(row.size()) +
                       " entries, expected " + std::to_string(data.front().size()));
    data.push_back(std::move(row));
  }
  f.matrix = IntMatrix(data.size(), data.empty() ? 0 : data.front().size());
  for (std::size_t i = 0; i < f.matrix.rows(); ++i)
    for (std::size_t k = 0; k < f.matrix.cols(); ++k) f.matrix(i, k) = data[i][k];
  return f;
}

MatrixFile read_matrix(const std::string& path) { return parse_matrix(read_file(path), path); }

Word parse_word(const std::string& text, std::size_t alphabet) {
  Word w;
  const bool separated = text.find_first_of(" ,\t") != std::string::npos;
  auto push = [&](const std::string& tok) {
    if (tok.empty()) return;
    if (tok.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("word \"" + text + "\": bad symbol \"" + tok + "\"");
    const unsigned long s = std::stoul(tok);
    if (s < 1 || s > alphabet)
      throw InputError("word \"" + text + "\": symbol " + tok + " outside 1.." + std::to_string(alphabet));
    w.push_back(s - 1);
  };
  if (separated) {
    std::string tok;
    for (char c : text) {
      if (c == ' ' || c == ',' || c == '\t') {
        push(tok);
        tok.clear();
      } else {
        tok += c;
      }
    }
    push(tok);
  } else if (alphabet > 9) {
    push(text);
  } else {
    for (char c : text) push(std::string(1, c));
  }
  return w;
}

BlockMap parse_block_map(const std::string& text, const std::string& origin) {
  const Json j = parse_json(text, origin);
  if (!j.is_object()) throw InputError(origin + ": expected a JSON object");
  const std::size_t m = count_from_json(j, "m", origin);
  const std::size_t n = count_from_json(j, "n", origin);

  auto shift = [&](const char* matrix_key, const char* alphabet_key) {
    if (j.contains(matrix_key)) {
      IntMatrix A = matrix_from_json(j.at(matrix_key), origin + ": " + matrix_key);
      if (j.contains(alphabet_key) && count_from_json(j, alphabet_key, origin) != A.rows())
        throw InputError(origin + ": \"" + alphabet_key + "\" does not match \"" + matrix_key + "\"");
      return A;
    }
    return full_shift(count_from_json(j, alphabet_key, origin));
  };
  IntMatrix source = shift("source_matrix", "source_alphabet");
  IntMatrix target = shift("target_matrix", "target_alphabet");

  if (!j.contains("table") || !j.at("table").is_object()) throw InputError(origin + ": missing \"table\" object");
  std::map<Word, std::size_t> table;
  for (const auto& [key, value] : j.at("table").items()) {
    const std::string where = origin + ": table[\"" + key + "\"]";
    Word w;
    try {
      w = parse_word(key, source.rows());
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
    if (w.size() != m + n + 1)
      throw InputError(where + ": window length " + std::to_string(w.size()) + ", expected " + std::to_string(m + n + 1));
    const Integer s = entry_from_json(value, where);
    if (s < 1 || s > Integer(std::to_string(target.rows())))
      throw InputError(where + ": symbol " + s.get_str() + " outside 1.." + std::to_string(target.rows()));
    table[w] = s.get_ui() - 1;
  }
  try {
    return BlockMap(std::move(source), std::move(target), m, n, std::move(table));
  } catch (const std::invalid_argument& e) {
    throw InputError(origin + ": " + e.what());
  }
}

BlockMap read_block_map(const std::string& path) { return parse_block_map(read_file(path), path); }

Json block_map_to_json(const BlockMap& phi) {
  Json j;
  j["m"] = phi.memory();
  j["n"] = phi.anticipation();
  j["source_alphabet"] = phi.source().rows();
  j["target_alphabet"] = phi.target().rows();
  j["source_matrix"] = matrix_to_json(phi.source());
  j["target_matrix"] = matrix_to_json(phi.target());
  Json table = Json::object();
  for (const auto& [w, s] : phi.table()) {
    std::string key;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (k > 0 && phi.source().rows() > 9) key += ' ';
      key += std::to_string(w[k] + 1);
    }
    table[key] = s + 1;
  }
  j["table"] = std::move(table);
  return j;
}

SseChain parse_chain(const std::string& text, const std::string& origin) {
  const Json j = parse_json(text, origin);
  if (!j.is_object() || !j.contains("matrices") || !j.at("matrices").is_array())
    throw InputError(origin + ": expected an object with a \"matrices\" array");
  if (!j.contains("steps") || !j.at("steps").is_array()) throw InputError(origin + ": missing \"steps\" array");
  SseChain c;
  const Json& ms = j.at("matrices");
  for (std::size_t i = 0; i < ms.size(); ++i)
    c.matrices.push_back(matrix_from_json(ms[i], origin + ": matrices[" + std::to_string(i) + "]"));
  const Json& st = j.at("steps");
  for (std::size_t i = 0; i < st.size(); ++i) {
    const std::string where = origin + ": steps[" + std::to_string(i) + "]";
    if (!st[i].is_object() || !st[i].contains("R") || !st[i].contains("S"))
      throw InputError(where + ": expected {\"R\": ..., \"S\": ...}");
    c.steps.push_back({matrix_from_json(st[i].at("R"), where + ".R"), matrix_from_json(st[i].at("S"), where + ".S")});
  }
  if (c.matrices.size() != c.steps.size() + 1)
    throw InputError(origin + ": " + std::to_string(c.matrices.size()) + " matrices for " +
                     std::to_string(c.steps.size()) + " steps");
  return c;
}

SseChain read_chain(const std::string& path) { return parse_chain(read_file(path), path); }

Json chain_to_json(const SseChain& chain) {
  Json j;
  j["matrices"] = Json::array();
  for (const auto& M : chain.matrices) j["matrices"].push_back(matrix_to_json(M));
  j["steps"] = Json::array();
  for (const auto& s : chain.steps) j["steps"].push_back(Json{{"R", matrix_to_json(s.R)}, {"S", matrix_to_json(s.S)}});
  return j;
}

}  // namespace shiftlab::io
