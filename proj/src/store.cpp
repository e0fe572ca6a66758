#include "chromalex/store.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "chromalex/errors.hpp"
#include "chromalex/util.hpp"

namespace chromalex::store {
namespace {

using nlohmann::json;

json dist_to_json(const embedding::ColorDistribution& d) {
  return json(d.mass);
}

[[noreturn]] void field_error(const std::string& word, const std::string& field,
                              const std::string& what) {
  throw ParseError("word '" + word + "': field '" + field + "' " + what);
}

std::array<double, 8> read_array8(const json& entry, const std::string& word,
                                  const std::string& field) {
  const json& v = entry.at(field);
  if (!v.is_array() || v.size() != 8) {
    field_error(word, field, "must be an array of 8 numbers");
  }
  std::array<double, 8> out{};
  for (std::size_t i = 0; i < 8; ++i) {
    if (!v[i].is_number()) field_error(word, field, "must be numeric");
    out[i] = v[i].get<double>();
    if (!std::isfinite(out[i])) field_error(word, field, "must be finite");
  }
  return out;
}

std::array<double, 3> read_array3(const json& entry, const std::string& word,
                                  const std::string& field) {
  const json& v = entry.at(field);
  if (!v.is_array() || v.size() != 3) {
    field_error(word, field, "must be an array of 3 numbers");
  }
  std::array<double, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!v[i].is_number()) field_error(word, field, "must be numeric");
    out[i] = v[i].get<double>();
  }
  return out;
}

embedding::ColorDistribution read_distribution(const json& entry,
                                               const std::string& word,
                                               const std::string& field) {
  embedding::ColorDistribution d;
  d.mass = read_array8(entry, word, field);
  for (double m : d.mass) {
    if (m < 0.0) field_error(word, field, "has a negative component");
  }
  double sum = 0.0;
  for (double m : d.mass) sum += m;
  if (std::abs(sum - 1.0) > 1e-9) field_error(word, field, "is not normalized");
  return d;
}

embedding::WordColorEmbedding parse_entry(const std::string& word, const json& e) {
  if (!e.is_object()) throw ParseError("word '" + word + "': entry is not an object");

  embedding::WordColorEmbedding rec;
  rec.word = word;
  if (!e.contains("jzazbz-dist")) field_error(word, "jzazbz-dist", "is missing");
  rec.jzazbz_dist = read_distribution(e, word, "jzazbz-dist");
  if (!e.contains("rgb-dist")) field_error(word, "rgb-dist", "is missing");
  rec.rgb_dist = read_distribution(e, word, "rgb-dist");
  if (e.contains("jzazbz-dist-std") && !e["jzazbz-dist-std"].is_null()) {
    auto std_arr = read_array8(e, word, "jzazbz-dist-std");
    for (double s : std_arr) {
      if (s < 0.0) field_error(word, "jzazbz-dist-std", "has a negative component");
    }
    rec.jzazbz_dist_std = std_arr;
  }
  if (!e.contains("jzazbz-vector")) field_error(word, "jzazbz-vector", "is missing");
  rec.jzazbz_vector = read_array3(e, word, "jzazbz-vector");
  if (!e.contains("rgb-vector")) field_error(word, "rgb-vector", "is missing");
  rec.rgb_vector = read_array3(e, word, "rgb-vector");
  if (e.contains("colorgram") && !e["colorgram"].is_null()) {
    if (!e["colorgram"].is_string()) field_error(word, "colorgram", "must be a string");
    rec.colorgram_path = e["colorgram"].get<std::string>();
  }
  if (e.contains("concreteness-mean") && !e["concreteness-mean"].is_null()) {
    if (!e["concreteness-mean"].is_number()) {
      field_error(word, "concreteness-mean", "must be numeric");
    }
    rec.concreteness_mean = e["concreteness-mean"].get<double>();
  }
  if (e.contains("concreteness-sd") && !e["concreteness-sd"].is_null()) {
    if (!e["concreteness-sd"].is_number()) {
      field_error(word, "concreteness-sd", "must be numeric");
    }
    rec.concreteness_sd = e["concreteness-sd"].get<double>();
  }
  if (e.contains("image-count")) {
    if (!e["image-count"].is_number_integer()) {
      field_error(word, "image-count", "must be an integer");
    }
    rec.image_count = e["image-count"].get<int>();
    if (rec.image_count < 1) field_error(word, "image-count", "must be >= 1");
  } else {
    rec.image_count = 1;
  }
  return rec;
}

}  // namespace

std::string embeddings_to_json(const EmbeddingMap& entries) {
  json root = json::object();
  for (const auto& [word, rec] : entries) {
    json e = json::object();
    e["rgb-dist"] = dist_to_json(rec.rgb_dist);
    e["jzazbz-dist"] = dist_to_json(rec.jzazbz_dist);
    if (rec.jzazbz_dist_std) e["jzazbz-dist-std"] = json(*rec.jzazbz_dist_std);
    e["colorgram"] = rec.colorgram_path;
    e["rgb-vector"] = json(rec.rgb_vector);
    e["jzazbz-vector"] = json(rec.jzazbz_vector);
    if (rec.concreteness_mean) e["concreteness-mean"] = *rec.concreteness_mean;
    if (rec.concreteness_sd) e["concreteness-sd"] = *rec.concreteness_sd;
    e["image-count"] = rec.image_count;
    root[word] = std::move(e);
  }
  return root.dump(2) + "\n";
}

void save_embeddings(const std::filesystem::path& path, const EmbeddingMap& entries) {
  write_file_text(path, embeddings_to_json(entries));
}

EmbeddingMap load_embeddings(const std::filesystem::path& path, bool skip_bad,
                             std::vector<std::string>* problems) {
  json root;
  try {
    root = json::parse(read_file_text(path));
  } catch (const json::parse_error& err) {
    throw ParseError(path.string() + ": " + err.what());
  }
  if (!root.is_object()) {
    throw ParseError(path.string() + ": top level must be an object");
  }

  EmbeddingMap out;
  for (const auto& [key, value] : root.items()) {
    const std::string word = to_lower(key);
    try {
      out[word] = parse_entry(word, value);
    } catch (const ParseError& err) {
      if (!skip_bad) throw;
      if (problems) problems->push_back(err.what());
    }
  }
  return out;
}

namespace {

double parse_number(const std::string& token, const std::string& context) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(context + ": not a number: '" + token + "'");
  }
  return value;
}

bool is_integer_token(const std::string& t) {
  if (t.empty()) return false;
  for (char c : t) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::vector<std::string> split_whitespace(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  return tokens;
}

}  // namespace

ConcretenessTable load_concreteness(const std::filesystem::path& path) {
  const std::string text = read_file_text(path);
  const auto lines = split(text, '\n');
  if (lines.empty() || trim(lines[0]).empty()) {
    throw ParseError(path.string() + ": missing header row");
  }
  const char delim = lines[0].find('\t') != std::string::npos ? '\t' : ',';

  ConcretenessTable table;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string line = trim(lines[i]);
    if (line.empty()) continue;
    const auto cols = split(line, delim);
    const std::string context = path.string() + " row " + std::to_string(i + 1);
    if (cols.size() < 3) throw ParseError(context + ": expected 3 columns");
    const std::string word = to_lower(trim(cols[0]));
    ConcretenessEntry entry;
    entry.mean = parse_number(trim(cols[1]), context);
    entry.sd = parse_number(trim(cols[2]), context);
    if (table.entries.count(word)) ++table.duplicates;
    table.entries[word] = entry;
  }
  return table;
}

TextVectorTable load_text_vectors(const std::filesystem::path& path) {
  const std::string text = read_file_text(path);
  const auto lines = split(text, '\n');

  TextVectorTable table;
  bool first_data_row = true;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto tokens = split_whitespace(lines[i]);
    if (tokens.empty()) continue;
    if (first_data_row && tokens.size() == 2 && is_integer_token(tokens[0]) &&
        is_integer_token(tokens[1])) {
      continue;  // count/dimension header
    }
    const std::string context = path.string() + " line " + std::to_string(i + 1);
    if (tokens.size() < 2) throw ParseError(context + ": expected word and components");
    const int dim = static_cast<int>(tokens.size()) - 1;
    if (first_data_row) {
      table.dimension = dim;
      first_data_row = false;
    } else if (dim != table.dimension) {
      throw DimensionMismatch(context + ": expected " +
                              std::to_string(table.dimension) +
                              " components, got " + std::to_string(dim));
    }
    std::vector<double> vec(static_cast<std::size_t>(dim));
    for (int d = 0; d < dim; ++d) {
      vec[static_cast<std::size_t>(d)] =
          parse_number(tokens[static_cast<std::size_t>(d) + 1], context);
    }
    table.vectors[to_lower(tokens[0])] = std::move(vec);
  }
  return table;
}

}  // namespace chromalex::store
