#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "prooftutor/proof_model.hpp"

namespace prooftutor {

inline constexpr std::string_view kStatementMarker = "Theorem Statement:";

/// Parses annotated Lean source: each tactic line is preceded by exactly one
/// `--` comment carrying its natural-language step. Metadata not present in
/// the source (world, persona, order) is left at defaults; theorem.name is
/// the declaration name. Throws AlignmentError or HeaderError.
std::vector<AnnotatedProof> parse_annotated_file(std::string_view source);

/// Inverse of parse_annotated_file for a single proof.
std::string serialize_annotated_proof(const AnnotatedProof& proof);

struct ManifestEntry {
  std::string file;  // relative to the manifest's directory
  std::string declaration;
  std::string theorem;
  std::string world;
  int order_index = 0;
  Persona persona = Persona::staff_solution;
  ProofLabel label = ProofLabel::correct;
  std::optional<int> skipped_index;

  bool operator==(const ManifestEntry&) const = default;
};

struct Manifest {
  std::vector<ManifestEntry> entries;

  static Manifest load(const std::string& path);
  static Manifest parse(std::string_view json_text);
  std::string dump() const;
};

/// A parsed corpus: every proof listed in a manifest, with metadata applied.
struct Corpus {
  std::vector<AnnotatedProof> proofs;

  /// Distinct theorems ordered by order_index.
  std::vector<TheoremSpec> theorems() const;
  const AnnotatedProof* staff_solution(const std::string& theorem) const;
  const AnnotatedProof* find(const std::string& declaration) const;
};

/// Loads every file named in the manifest. Throws Error when the manifest and
/// the sources disagree or order indices collide.
Corpus load_corpus(const std::string& manifest_path);

/// Applies manifest metadata to parsed proofs, matching on declaration.
std::vector<AnnotatedProof> apply_manifest(std::vector<AnnotatedProof> parsed, const std::vector<ManifestEntry>& entries);

/// Deletes one step following the step-skipping procedure:
///   n in {2,3}: step 2;  n = 4: step 3 or 2;  n > 4: step n-1, n-2 or n-3.
/// Choices are uniform and a pure function of `seed`. Throws TooShort for a
/// one-step proof.
AnnotatedProof skip_step(const AnnotatedProof& proof, std::uint64_t seed);

/// Candidate 1-based indices skip_step may delete for a proof of n steps.
std::vector<int> skip_window(std::size_t n);

struct IncorrectSet {
  std::vector<AnnotatedProof> proofs;
  std::vector<std::string> excluded;  // "<declaration>: <reason>"
};

/// One incorrect proof per eligible correct proof. Staff solutions and
/// one-step proofs are excluded. Declarations gain an "_incorrect" suffix.
IncorrectSet generate_incorrect_set(const std::vector<AnnotatedProof>& proofs, std::uint64_t seed);

enum class PremiseKind { theorem, tactic };

struct PremiseDictionary {
  PremiseKind kind = PremiseKind::theorem;
  std::map<std::string, std::string> entries;  // formal name -> description

  /// Rendered for prompts: a JSON object with sorted keys.
  std::string render() const;
};

struct PremiseNames {
  std::set<std::string> theorems;
  std::set<std::string> tactics;
};

/// Tactic heads and referenced premises in one proof. Local names (binders
/// in the header, names introduced by `with`, `intro`, `have`, ...) are not
/// premises.
PremiseNames scan_premises(const AnnotatedProof& proof);

struct DescriptionFile {
  std::map<std::string, std::string> theorems;
  std::map<std::string, std::string> tactics;
  static DescriptionFile load(const std::string& path);
};

struct Dictionaries {
  PremiseDictionary theorems{PremiseKind::theorem, {}};
  PremiseDictionary tactics{PremiseKind::tactic, {}};
  std::vector<std::string> missing;  // names with no curated description
};

inline constexpr std::string_view kMissingDescription = "(no description available)";

Dictionaries build_dictionaries(const std::vector<AnnotatedProof>& proofs, const DescriptionFile& descriptions);

}  // namespace prooftutor
