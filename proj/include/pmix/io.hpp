#ifndef PMIX_IO_HPP
#define PMIX_IO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "certify.hpp"
#include "chartable.hpp"
#include "mixing.hpp"
#include "permutation.hpp"

namespace pmix
{

/// Key order is preserved so that emitted documents are stable byte-for-byte.
using Json = nlohmann::ordered_json;

inline constexpr std::string_view tool_version = "pmix 0.1.0";

// ---------------------------------------------------------------------------
// Input files
// ---------------------------------------------------------------------------

/// Reads `path` into memory. Throws Error(IoError).
std::string read_file(std::filesystem::path const &path);

/// Parses JSON text; syntax errors become Error(SyntaxError) with the line and
/// column of the offending byte. `source` prefixes the message.
Json parse_json(std::string const &text, std::string const &source);

/// {"degree": d, "generators": [[images...], ...]}. Throws Error(SyntaxError)
/// for malformed documents and Error(NotABijection) naming the generator.
std::vector<Permutation> parse_group_text(std::string const &text,
                                          std::string const &source = "<input>");
std::vector<Permutation> parse_group_file(std::filesystem::path const &path);

/// {"order", "class_sizes", "class_reps", "characters": [[[re, im], ...], ...]}.
/// Degrees and the trivial row are read off the table; the result is checked
/// against G and every table invariant (Error(ValidationFailed)).
CharTable parse_char_table_text(std::string const &text, GroupTable const &G,
                                std::optional<double> tolerance = std::nullopt,
                                std::string const &source = "<input>");
CharTable parse_char_table_file(std::filesystem::path const &path, GroupTable const &G,
                                std::optional<double> tolerance = std::nullopt);

/// The table file document for T; doubles use the shortest form that reads
/// back to the same value.
Json char_table_document(CharTable const &T);
std::string export_char_table(CharTable const &T);

// ---------------------------------------------------------------------------
// Set specifications
// ---------------------------------------------------------------------------

/// "class:<i>", "union:[i, ...]", "random:{"density": p, "seed": s}",
/// an explicit element list "[a, ...]", or "all".
struct SetSpec
{
  enum class Kind { Class, Union, Random, Elements, All };

  Kind kind = Kind::All;
  std::vector<std::size_t> indices; // class or element indices
  double density = 0;
  std::uint64_t seed = 0;

  friend bool operator==(SetSpec const &, SetSpec const &) = default;
};

/// Throws Error(SyntaxError).
SetSpec parse_set_spec(std::string_view text);
std::string to_string(SetSpec const &spec);

/// Throws Error(InvalidArgument) for indices outside G.
ElementSet materialize(SetSpec const &spec, GroupTable const &G);

// ---------------------------------------------------------------------------
// Certification requests
// ---------------------------------------------------------------------------

struct CertifyRequest
{
  std::filesystem::path group; // relative paths resolve against the request file
  double epsilon = 0;
  double eta = 0;
  int i = 3;
  MixerMode mode = MixerMode::ExhaustiveNormal;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;

  friend bool operator==(CertifyRequest const &, CertifyRequest const &) = default;
};

CertifyRequest parse_certify_request(std::string const &text,
                                     std::filesystem::path const &base_dir = {},
                                     std::string const &source = "<input>");
CertifyRequest parse_certify_request_file(std::filesystem::path const &path);

// ---------------------------------------------------------------------------
// Report documents
// ---------------------------------------------------------------------------

/// {"tool", "command", "config", "result"}
Json report_document(std::string const &command, Json config, Json result);

/// Two-space indented dump with a trailing newline.
std::string dump(Json const &doc);

Json to_json(Rational const &r);

Json to_json(SetSummary const &s);
Json to_json(MixReport const &r);
Json to_json(FrobeniusEvaluation const &r);
Json to_json(FrobeniusErrorBound const &r);
Json to_json(TripleIdentityReport const &r);
Json to_json(CyclicIdentityReport const &r);
Json to_json(RatioScanRow const &r);
Json to_json(PartSizes const &r);
Json to_json(DecompositionReport const &r);
Json to_json(SetRecord const &r);
Json to_json(Counterexample const &r);
Json to_json(MixerCertificate const &r);
Json to_json(EpsilonPrime const &r);
Json to_json(PropagationReport const &r);
Json to_json(Check const &r);
Json to_json(EndToEndReport const &r);

/// Inverses of the to_json overloads; throw Error(SyntaxError) on shape errors.
template<typename T>
T from_json(Json const &j);

template<> Rational from_json<Rational>(Json const &j);
template<> SetSummary from_json<SetSummary>(Json const &j);
template<> MixReport from_json<MixReport>(Json const &j);
template<> FrobeniusEvaluation from_json<FrobeniusEvaluation>(Json const &j);
template<> FrobeniusErrorBound from_json<FrobeniusErrorBound>(Json const &j);
template<> TripleIdentityReport from_json<TripleIdentityReport>(Json const &j);
template<> CyclicIdentityReport from_json<CyclicIdentityReport>(Json const &j);
template<> RatioScanRow from_json<RatioScanRow>(Json const &j);
template<> PartSizes from_json<PartSizes>(Json const &j);
template<> DecompositionReport from_json<DecompositionReport>(Json const &j);
template<> SetRecord from_json<SetRecord>(Json const &j);
template<> Counterexample from_json<Counterexample>(Json const &j);
template<> MixerCertificate from_json<MixerCertificate>(Json const &j);
template<> EpsilonPrime from_json<EpsilonPrime>(Json const &j);
template<> PropagationReport from_json<PropagationReport>(Json const &j);
template<> Check from_json<Check>(Json const &j);
template<> EndToEndReport from_json<EndToEndReport>(Json const &j);

} // namespace pmix

#endif // PMIX_IO_HPP
