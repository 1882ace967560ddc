#include "prooftutor/dataset.hpp"

#include <algorithm>
#include <filesystem>
#include <random>
#include <sstream>

#include "json.hpp"
#include "prooftutor/errors.hpp"
#include "prooftutor/identifier.hpp"
#include "prooftutor/text.hpp"

namespace prooftutor {

using nlohmann::json;

namespace {

bool starts_declaration(std::string_view trimmed) {
  return trimmed.starts_with("theorem ") || trimmed.starts_with("lemma ") || trimmed.starts_with("example ") ||
         trimmed == "example";
}

bool indented(std::string_view line) { return !line.empty() && (line.front() == ' ' || line.front() == '\t'); }

std::string strip_comment_marker(std::string_view trimmed) {
  trimmed.remove_prefix(2);
  return std::string(text::trim(trimmed));
}

std::string strip_inline_comment(std::string_view tactic) {
  auto pos = tactic.find("--");
  if (pos != std::string_view::npos) tactic = tactic.substr(0, pos);
  return std::string(text::trim(tactic));
}

class SourceParser {
 public:
  std::vector<AnnotatedProof> run(std::string_view source) {
    for (const auto& raw : text::split_lines(source)) {
      ++lineno_;
      line(raw);
    }
    if (mode_ == Mode::header) throw HeaderError(where() + "theorem header does not end with ':= by'");
    finish_body();
    return std::move(out_);
  }

 private:
  enum class Mode { top, header, body };

  std::string where() const { return "line " + std::to_string(lineno_) + ": "; }

  void line(const std::string& raw) {
    const auto trimmed = text::trim(raw);
    switch (mode_) {
      case Mode::top:
        top(trimmed);
        return;
      case Mode::header:
        header(raw, trimmed);
        return;
      case Mode::body:
        if (trimmed.empty()) return;
        if (!indented(raw) || starts_declaration(trimmed)) {
          finish_body();
          top(trimmed);
          return;
        }
        body(trimmed);
        return;
    }
  }

  void top(std::string_view trimmed) {
    if (trimmed.empty()) return;
    if (trimmed.starts_with("--")) {
      auto comment = text::trim(trimmed.substr(2));
      if (comment.starts_with(kStatementMarker))
        pending_statement_ = std::string(text::trim(comment.substr(kStatementMarker.size())));
      return;
    }
    if (!starts_declaration(trimmed)) return;  // imports, namespaces, options
    current_ = AnnotatedProof{};
    current_.theorem.statement_nl = std::exchange(pending_statement_, std::string{});
    header_lines_.clear();
    mode_ = Mode::header;
    header(std::string(trimmed), trimmed);
  }

  void header(const std::string& raw, std::string_view trimmed) {
    if (trimmed.starts_with("--") || (trimmed.empty() && !header_lines_.empty()))
      throw HeaderError(where() + "theorem header does not end with ':= by'");
    header_lines_.emplace_back(text::trim_right(raw));
    if (trimmed.ends_with(kProofEntry)) {
      current_.theorem.statement_fl = text::join(header_lines_, "\n");
      current_.theorem.name = current_.theorem.declaration();
      mode_ = Mode::body;
      return;
    }
    if (trimmed.find(kProofEntry) != std::string_view::npos)
      throw HeaderError(where() + "tactics must start on the line after ':= by'");
  }

  void body(std::string_view trimmed) {
    if (trimmed.starts_with("--")) {
      if (pending_nl_) throw AlignmentError(where() + "comment without a tactic: " + *pending_nl_);
      pending_nl_ = strip_comment_marker(trimmed);
      return;
    }
    if (!pending_nl_) throw AlignmentError(where() + "tactic without a preceding comment: " + std::string(trimmed));
    current_.steps.push_back(ProofStep{std::move(*pending_nl_), strip_inline_comment(trimmed)});
    pending_nl_.reset();
  }

  void finish_body() {
    if (mode_ != Mode::body) return;
    mode_ = Mode::top;
    if (pending_nl_) throw AlignmentError(where() + "comment without a tactic: " + *pending_nl_);
    if (current_.steps.empty())
      throw AlignmentError(where() + "proof of " + current_.theorem.name + " has no annotated steps");
    out_.push_back(std::move(current_));
  }

  Mode mode_ = Mode::top;
  int lineno_ = 0;
  std::string pending_statement_;
  std::optional<std::string> pending_nl_;
  std::vector<std::string> header_lines_;
  AnnotatedProof current_;
  std::vector<AnnotatedProof> out_;
};

}  // namespace

std::vector<AnnotatedProof> parse_annotated_file(std::string_view source) {
  auto proofs = SourceParser{}.run(source);
  if (proofs.empty()) throw HeaderError("no theorem found");
  return proofs;
}

std::string serialize_annotated_proof(const AnnotatedProof& proof) {
  std::string out;
  if (!proof.theorem.statement_nl.empty()) {
    out += "-- ";
    out += kStatementMarker;
    out += " ";
    out += proof.theorem.statement_nl;
    out += "\n";
  }
  out += proof.theorem.statement_fl;
  out += "\n";
  for (const auto& step : proof.steps) {
    out += "  -- " + step.nl + "\n";
    out += "  " + step.tactic + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Manifest and corpus

namespace {

ManifestEntry entry_from_json(const json& j) {
  ManifestEntry e;
  e.file = j.at("file").get<std::string>();
  e.declaration = j.at("declaration").get<std::string>();
  e.theorem = j.at("theorem").get<std::string>();
  e.world = j.value("world", "");
  e.order_index = j.at("order_index").get<int>();
  e.persona = persona_from_string(j.at("persona").get<std::string>());
  e.label = label_from_string(j.value("label", "correct"));
  if (j.contains("skipped_index")) e.skipped_index = j["skipped_index"].get<int>();
  return e;
}

json entry_to_json(const ManifestEntry& e) {
  json j{{"file", e.file},
         {"declaration", e.declaration},
         {"theorem", e.theorem},
         {"world", e.world},
         {"order_index", e.order_index},
         {"persona", to_string(e.persona)},
         {"label", to_string(e.label)}};
  if (e.skipped_index) j["skipped_index"] = *e.skipped_index;
  return j;
}

}  // namespace

Manifest Manifest::parse(std::string_view json_text) {
  Manifest m;
  try {
    auto j = json::parse(json_text);
    for (const auto& item : j.at("proofs")) m.entries.push_back(entry_from_json(item));
  } catch (const json::exception& e) {
    throw Error(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

Manifest Manifest::load(const std::string& path) { return parse(text::read_file(path)); }

std::string Manifest::dump() const {
  json list = json::array();
  for (const auto& e : entries) list.push_back(entry_to_json(e));
  return json{{"proofs", list}}.dump(2) + "\n";
}

std::vector<AnnotatedProof> apply_manifest(std::vector<AnnotatedProof> parsed,
                                           const std::vector<ManifestEntry>& entries) {
  std::vector<AnnotatedProof> out;
  for (const auto& e : entries) {
    auto it = std::find_if(parsed.begin(), parsed.end(),
                           [&](const AnnotatedProof& p) { return p.theorem.declaration() == e.declaration; });
    if (it == parsed.end()) throw Error("manifest lists " + e.declaration + " but " + e.file + " does not define it");
    AnnotatedProof p = *it;
    p.theorem.name = e.theorem;
    p.theorem.world = e.world;
    p.theorem.order_index = e.order_index;
    p.persona = e.persona;
    p.label = e.label;
    p.skipped_index = e.skipped_index;
    p.validate();
    out.push_back(std::move(p));
  }
  return out;
}

Corpus load_corpus(const std::string& manifest_path) {
  const auto manifest = Manifest::load(manifest_path);
  const auto root = std::filesystem::path(manifest_path).parent_path();
  std::map<std::string, std::vector<ManifestEntry>> by_file;
  std::vector<std::string> file_order;
  for (const auto& e : manifest.entries) {
    if (!by_file.count(e.file)) file_order.push_back(e.file);
    by_file[e.file].push_back(e);
  }
  Corpus corpus;
  for (const auto& file : file_order) {
    auto parsed = parse_annotated_file(text::read_file((root / file).string()));
    for (const auto& p : parsed) {
      const auto& listed = by_file[file];
      if (std::none_of(listed.begin(), listed.end(),
                       [&](const ManifestEntry& e) { return e.declaration == p.theorem.declaration(); }))
        throw Error(file + " defines " + p.theorem.declaration() + " which the manifest does not list");
    }
    for (auto& p : apply_manifest(std::move(parsed), by_file[file])) corpus.proofs.push_back(std::move(p));
  }
  std::map<std::string, int> order_of;
  std::map<int, std::string> name_of;
  for (const auto& p : corpus.proofs) {
    const auto& t = p.theorem;
    if (auto it = order_of.find(t.name); it != order_of.end() && it->second != t.order_index)
      throw Error("theorem " + t.name + " has two order indices");
    if (auto it = name_of.find(t.order_index); it != name_of.end() && it->second != t.name)
      throw Error("order index " + std::to_string(t.order_index) + " is shared by " + it->second + " and " + t.name);
    order_of[t.name] = t.order_index;
    name_of[t.order_index] = t.name;
  }
  return corpus;
}

std::vector<TheoremSpec> Corpus::theorems() const {
  std::map<int, TheoremSpec> by_order;
  for (const auto& p : proofs) {
    auto [it, inserted] = by_order.emplace(p.theorem.order_index, p.theorem);
    // Prefer the staff solution's statement when several personas exist.
    if (!inserted && p.persona == Persona::staff_solution) it->second = p.theorem;
  }
  std::vector<TheoremSpec> out;
  for (auto& [_, t] : by_order) out.push_back(t);
  return out;
}

const AnnotatedProof* Corpus::staff_solution(const std::string& theorem) const {
  for (const auto& p : proofs)
    if (p.theorem.name == theorem && p.persona == Persona::staff_solution && p.label == ProofLabel::correct) return &p;
  return nullptr;
}

const AnnotatedProof* Corpus::find(const std::string& declaration) const {
  for (const auto& p : proofs)
    if (p.theorem.declaration() == declaration) return &p;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Step skipping

std::vector<int> skip_window(std::size_t n) {
  const int k = static_cast<int>(n);
  if (n == 2 || n == 3) return {2};
  if (n == 4) return {k - 1, k - 2};
  if (n > 4) return {k - 1, k - 2, k - 3};
  return {};
}

AnnotatedProof skip_step(const AnnotatedProof& proof, std::uint64_t seed) {
  if (proof.label != ProofLabel::correct) throw Error("skip_step expects a correct proof");
  const auto n = proof.steps.size();
  if (n < 2) throw TooShort(proof.theorem.declaration() + " has a single step");
  const auto window = skip_window(n);
  // mt19937_64 is fully specified, so the choice is portable across
  // standard libraries (unlike the distributions).
  std::mt19937_64 rng(seed);
  const int index = window[rng() % window.size()];

  AnnotatedProof out = proof;
  out.steps.erase(out.steps.begin() + (index - 1));
  out.label = ProofLabel::incorrect;
  out.skipped_index = index;
  return out;
}

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string rename_declaration(const std::string& header, const std::string& from, const std::string& to) {
  auto pos = header.find(" " + from);
  if (pos == std::string::npos) return header;
  return header.substr(0, pos + 1) + to + header.substr(pos + 1 + from.size());
}

}  // namespace

IncorrectSet generate_incorrect_set(const std::vector<AnnotatedProof>& proofs, std::uint64_t seed) {
  IncorrectSet out;
  for (const auto& p : proofs) {
    const auto decl = p.theorem.declaration();
    if (p.persona == Persona::staff_solution) {
      out.excluded.push_back(decl + ": staff solution");
      continue;
    }
    if (p.label != ProofLabel::correct) {
      out.excluded.push_back(decl + ": not a correct proof");
      continue;
    }
    if (p.steps.size() < 2) {
      out.excluded.push_back(decl + ": one-step proof");
      continue;
    }
    auto bad = skip_step(p, mix(seed ^ text::fnv1a64(decl)));
    bad.theorem.statement_fl = rename_declaration(bad.theorem.statement_fl, decl, decl + "_incorrect");
    out.proofs.push_back(std::move(bad));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dictionaries

std::string PremiseDictionary::render() const {
  json j = json::object();
  for (const auto& [k, v] : entries) j[k] = v;
  return j.dump(2);
}

namespace {

const std::set<std::string> kCombinators{"repeat", "try", "all_goals", "any_goals", "iterate", "focus"};
const std::set<std::string> kIntroducers{"intro", "intros", "rintro"};
const std::set<std::string> kKeywords{"with", "at", "using", "generalizing", "fun", "in", "this", "_"};
// Term constructors, not premises.
const std::set<std::string> kTermConstants{"succ", "pred", "True", "False"};

std::set<std::string> header_binders(const std::string& header) {
  std::set<std::string> names;
  std::vector<std::size_t> opens;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const char c = header[i];
    if (c == '(' || c == '{' || c == '[') {
      opens.push_back(i);
    } else if ((c == ')' || c == '}' || c == ']') && !opens.empty()) {
      const auto start = opens.back() + 1;
      opens.pop_back();
      const auto group = header.substr(start, i - start);
      const auto colon = group.find(':');
      if (colon == std::string::npos) continue;
      std::istringstream in(group.substr(0, colon));
      std::string n;
      while (in >> n) names.insert(n);
    }
  }
  return names;
}

}  // namespace

PremiseNames scan_premises(const AnnotatedProof& proof) {
  std::set<std::string> locals = header_binders(proof.theorem.statement_fl);
  struct Line {
    std::vector<std::string> heads;
    std::vector<std::string> args;
  };
  std::vector<Line> lines;
  for (const auto& step : proof.steps) {
    const auto tokens = lexer::identifiers(step.tactic);
    Line l;
    std::size_t i = 0;
    while (i < tokens.size()) {
      l.heads.push_back(tokens[i].text);
      if (!kCombinators.count(tokens[i].text)) break;
      ++i;
    }
    const std::string head = l.heads.empty() ? "" : l.heads.back();
    bool introducing = kIntroducers.count(head) > 0;
    bool after_have = head == "have" || head == "obtain";
    for (std::size_t k = l.heads.size(); k < tokens.size(); ++k) {
      const auto& t = tokens[k].text;
      if (t == "with" || t == "at") {
        introducing = true;
        continue;
      }
      if (after_have) {
        locals.insert(t);
        after_have = false;
        continue;
      }
      if (introducing)
        locals.insert(t);
      else
        l.args.push_back(t);
    }
    lines.push_back(std::move(l));
  }
  PremiseNames names;
  for (const auto& l : lines) {
    for (const auto& h : l.heads) names.tactics.insert(h);
    for (const auto& a : l.args)
      if (!locals.count(a) && !kKeywords.count(a) && !kCombinators.count(a) && !kTermConstants.count(a))
        names.theorems.insert(a);
  }
  return names;
}

DescriptionFile DescriptionFile::load(const std::string& path) {
  DescriptionFile d;
  try {
    auto j = json::parse(text::read_file(path));
    d.theorems = j.value("theorems", std::map<std::string, std::string>{});
    d.tactics = j.value("tactics", std::map<std::string, std::string>{});
  } catch (const json::exception& e) {
    throw Error("malformed description file " + path + ": " + e.what());
  }
  return d;
}

Dictionaries build_dictionaries(const std::vector<AnnotatedProof>& proofs, const DescriptionFile& descriptions) {
  Dictionaries d;
  auto fill = [&](PremiseDictionary& dict, const std::set<std::string>& names,
                  const std::map<std::string, std::string>& known, std::string_view kind) {
    for (const auto& n : names) {
      auto it = known.find(n);
      if (it != known.end() && !text::is_blank(it->second)) {
        dict.entries[n] = it->second;
      } else {
        dict.entries[n] = std::string(kMissingDescription);
        d.missing.push_back(std::string(kind) + " " + n);
      }
    }
  };
  PremiseNames all;
  for (const auto& p : proofs) {
    auto n = scan_premises(p);
    all.theorems.insert(n.theorems.begin(), n.theorems.end());
    all.tactics.insert(n.tactics.begin(), n.tactics.end());
  }
  fill(d.theorems, all.theorems, descriptions.theorems, "theorem");
  fill(d.tactics, all.tactics, descriptions.tactics, "tactic");
  return d;
}

}  // namespace prooftutor
