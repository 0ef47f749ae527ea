#include "hs/contour_io.hpp"

#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "hs/error.hpp"

namespace hs {

using nlohmann::json;

namespace {

const std::set<std::string, std::less<>> kDocFields = {"doc_id", "tokens", "meta"};
const std::set<std::string, std::less<>> kTokenFields = {"i",       "text", "surprisal", "n_chars",
                                                         "edu",     "sent", "par"};

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    throw Error(ErrorKind::ParseError, what, line_no);
}

template <typename T>
T field(const json& obj, const char* key, std::size_t line_no) {
    const auto it = obj.find(key);
    if (it == obj.end()) parse_fail(line_no, std::string("missing field '") + key + "'");
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        parse_fail(line_no, std::string("field '") + key + "' has the wrong type");
    }
}

long integer_field(const json& obj, const char* key, std::size_t line_no) {
    const auto it = obj.find(key);
    if (it == obj.end()) parse_fail(line_no, std::string("missing field '") + key + "'");
    if (!it->is_number_integer())
        parse_fail(line_no, std::string("field '") + key + "' must be an integer");
    return it->get<long>();
}

void warn_unknown(const json& obj, const std::set<std::string, std::less<>>& known,
                  std::size_t line_no, std::ostream* warnings, std::set<std::string>& reported) {
    if (!warnings) return;
    for (const auto& [key, _] : obj.items()) {
        if (known.count(key) || reported.count(key)) continue;
        reported.insert(key);
        *warnings << "warning: line " << line_no << ": ignoring unknown field '" << key << "'\n";
    }
}

DocumentContour parse_line(std::string_view line, std::size_t line_no, std::ostream* warnings,
                           std::set<std::string>& reported) {
    json obj;
    try {
        obj = json::parse(line);
    } catch (const json::parse_error& e) {
        parse_fail(line_no, e.what());
    }
    if (!obj.is_object()) parse_fail(line_no, "record is not an object");

    warn_unknown(obj, kDocFields, line_no, warnings, reported);
    auto doc_id = field<std::string>(obj, "doc_id", line_no);
    std::string meta;
    if (const auto it = obj.find("meta"); it != obj.end()) {
        if (!it->is_string()) parse_fail(line_no, "field 'meta' must be a string");
        meta = it->get<std::string>();
    }
    const auto tokens_it = obj.find("tokens");
    if (tokens_it == obj.end() || !tokens_it->is_array()) parse_fail(line_no, "missing token array");

    std::vector<TokenRecord> tokens;
    tokens.reserve(tokens_it->size());
    for (const auto& t : *tokens_it) {
        if (!t.is_object()) parse_fail(line_no, "token is not an object");
        warn_unknown(t, kTokenFields, line_no, warnings, reported);
        TokenRecord rec;
        const long index = integer_field(t, "i", line_no);
        if (index < 0) parse_fail(line_no, "token index is negative");
        rec.index = static_cast<std::size_t>(index);
        rec.text = field<std::string>(t, "text", line_no);
        const auto s = t.find("surprisal");
        if (s == t.end() || !s->is_number()) parse_fail(line_no, "token surprisal must be a number");
        rec.surprisal = s->get<double>();
        rec.n_chars = integer_field(t, "n_chars", line_no);
        rec.edu_id = integer_field(t, "edu", line_no);
        rec.sent_id = integer_field(t, "sent", line_no);
        rec.par_id = integer_field(t, "par", line_no);
        tokens.push_back(std::move(rec));
    }
    try {
        return validate_document(std::move(doc_id), std::move(tokens), std::move(meta));
    } catch (const Error& e) {
        throw Error(e.kind(), e.detail(), line_no);
    }
}

}  // namespace

DocumentContour parse_contour_line(std::string_view line, std::size_t line_no,
                                   std::ostream* warnings) {
    std::set<std::string> reported;
    return parse_line(line, line_no, warnings, reported);
}

std::string to_contour_line(const DocumentContour& doc) {
    json obj = json::object();
    obj["doc_id"] = doc.doc_id();
    if (!doc.meta().empty()) obj["meta"] = doc.meta();
    json tokens = json::array();
    for (const auto& t : doc.tokens()) {
        tokens.push_back({{"i", t.index},
                          {"text", t.text},
                          {"surprisal", t.surprisal},
                          {"n_chars", t.n_chars},
                          {"edu", t.edu_id},
                          {"sent", t.sent_id},
                          {"par", t.par_id}});
    }
    obj["tokens"] = std::move(tokens);
    return obj.dump();
}

std::vector<DocumentContour> read_contours(std::istream& in, std::ostream* warnings) {
    std::vector<DocumentContour> docs;
    std::set<std::string> reported;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        docs.push_back(parse_line(line, line_no, warnings, reported));
    }
    if (docs.empty()) throw Error(ErrorKind::EmptyInput, "no documents in input");
    return docs;
}

std::vector<DocumentContour> load_contours(const std::filesystem::path& path,
                                           std::ostream* warnings) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
    return read_contours(in, warnings);
}

void save_contours(const std::filesystem::path& path, const std::vector<DocumentContour>& docs) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
    for (const auto& doc : docs) out << to_contour_line(doc) << '\n';
    if (!out) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

namespace {

IntRange range_field(const json& obj, const char* key, IntRange fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number_integer() ||
        !(*it)[1].is_number_integer())
        throw Error(ErrorKind::InvalidSpec, std::string("'") + key + "' must be [lo, hi]");
    return {(*it)[0].get<long>(), (*it)[1].get<long>()};
}

}  // namespace

SyntheticSpec parse_synthetic_spec(std::string_view json_text) {
    json obj;
    try {
        obj = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::InvalidSpec, e.what());
    }
    if (!obj.is_object()) throw Error(ErrorKind::InvalidSpec, "config must be an object");
    SyntheticSpec spec;
    try {
        spec.n_docs = obj.value("n_docs", spec.n_docs);
        spec.seed = obj.value("seed", spec.seed);
        spec.intercept = obj.value("intercept", spec.intercept);
        spec.noise_sd = obj.value("noise_sd", spec.noise_sd);
        spec.edus_per_doc = range_field(obj, "edus_per_doc", spec.edus_per_doc);
        spec.tokens_per_edu = range_field(obj, "tokens_per_edu", spec.tokens_per_edu);
        spec.edus_per_sentence = range_field(obj, "edus_per_sentence", spec.edus_per_sentence);
        spec.sentences_per_paragraph =
            range_field(obj, "sentences_per_paragraph", spec.sentences_per_paragraph);
        spec.chars_per_token = range_field(obj, "chars_per_token", spec.chars_per_token);
        if (const auto it = obj.find("harmonics"); it != obj.end()) {
            for (const auto& h : *it) {
                const auto s = parse_structure(h.at("structure").get<std::string>());
                if (!s) throw Error(ErrorKind::InvalidSpec, "unknown structure in harmonics");
                const auto k = h.at("k").get<long>();
                if (k < 1) throw Error(ErrorKind::InvalidSpec, "harmonic order must be >= 1");
                spec.harmonics[{*s, static_cast<std::size_t>(k)}] = {h.value("sin", 0.0), h.value("cos", 0.0)};
            }
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidSpec, e.what());
    }
    return spec;
}

SyntheticSpec load_synthetic_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_synthetic_spec(buffer.str());
}

}  // namespace hs
