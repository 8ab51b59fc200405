// SPDX-License-Identifier: Apache-2.0
//
// graphbpe: mine merge operations and motif vocabularies, fragmentize
// molecules, generate and evaluate.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "graphbpe/generator.h"
#include "graphbpe/io.h"
#include "graphbpe/metrics.h"
#include "graphbpe/miner.h"
#include "graphbpe/motif.h"
#include "graphbpe/ops.h"
#include "graphbpe/parallel.h"
#include "graphbpe/smiles.h"
#include "graphbpe/tokenizer.h"

namespace {

using namespace graphbpe;

constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitVersion = 4;

constexpr const char* kSmilesHelp = R"(SMILES subset:
  atoms      B C N O F P S Cl Br I, aromatic b c n o p s, and "*"
  brackets   [NH4+], [nH], [O-], [S+2]: element, H count, charge only
  bonds      - = # : (no bond symbol: single, or aromatic between aromatic atoms)
  rings      digits 1-9 and %10-%99
  branches   ( )
  rejected   isotopes, @ chirality, / \ bond stereo, atom classes, '.'
Corpus files hold one SMILES per line, optionally followed by a tab and an id.
Blank lines and lines starting with '#' are ignored.

Exit codes: 0 success, 2 usage, 3 input parse error, 4 format version error.)";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  return out;
}

std::vector<MolGraph> load_corpus(const std::string& path,
                                  std::vector<CorpusEntry>* entries = nullptr) {
  std::ifstream in = open_input(path);
  std::vector<CorpusEntry> read = read_corpus(in);
  std::vector<MolGraph> mols = parse_corpus(read);
  if (entries != nullptr) *entries = std::move(read);
  return mols;
}

OpsList load_ops(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_ops(in);
}

MotifVocabulary load_vocab(const std::string& vocab_path, const std::string& attach_path) {
  std::ifstream v = open_input(vocab_path);
  if (attach_path.empty()) return read_vocabulary(v, nullptr);
  std::ifstream a = open_input(attach_path);
  return read_vocabulary(v, &a);
}

// Writes to `path`, or standard output when empty.
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out = open_output(path);
  fn(out);
}

struct MineArgs {
  std::string corpus;
  int k = 0;
  std::string out_dir;
  int threads = default_thread_count();
};

void run_mine(const MineArgs& a) {
  const std::vector<MolGraph> corpus = load_corpus(a.corpus);
  std::filesystem::create_directories(a.out_dir);
  const OpsList ops = learn_merging_operations(corpus, a.k, a.threads);
  const VocabularyBuild build = build_motif_vocabulary(corpus, ops, a.threads);
  const std::filesystem::path dir(a.out_dir);
  {
    std::ofstream out = open_output((dir / "ops.txt").string());
    write_ops(out, ops);
  }
  write_vocabulary_files((dir / "vocab.txt").string(), (dir / "attachments.txt").string(),
                         build.vocabulary);
  std::cout << "molecules=" << corpus.size() << '\n'
            << "operations=" << ops.size() << '\n'
            << "motifs=" << build.vocabulary.size() << '\n'
            << "mean_fragments=" << std::fixed << std::setprecision(3) << build.mean_fragments
            << '\n';
}

struct FragmentizeArgs {
  std::string corpus;
  std::string ops;
  std::string out;
  bool sites = false;
};

void run_fragmentize(const FragmentizeArgs& a) {
  const OpsList ops = load_ops(a.ops);
  std::vector<CorpusEntry> entries;
  const std::vector<MolGraph> corpus = load_corpus(a.corpus, &entries);
  with_output(a.out, [&](std::ostream& out) {
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      std::vector<std::string> parts;
      if (a.sites) {
        for (const MotifInstance& m : fragmentize(corpus[i], ops).motifs) parts.push_back(m.smiles);
      } else {
        parts = fragment_patterns(apply_operations(corpus[i], ops));
      }
      std::sort(parts.begin(), parts.end());
      out << entries[i].id << '\t';
      for (std::size_t j = 0; j < parts.size(); ++j) out << (j ? "|" : "") << parts[j];
      out << '\n';
    }
  });
}

struct TrajectoryArgs {
  std::string corpus;
  std::string ops;
  std::string out;
};

void run_trajectories(const TrajectoryArgs& a) {
  const OpsList ops = load_ops(a.ops);
  const std::vector<MolGraph> corpus = load_corpus(a.corpus);
  with_output(a.out, [&](std::ostream& out) {
    for (const MolGraph& mol : corpus) out << trajectory_to_json(extract_trajectory(mol, ops)) << '\n';
  });
}

struct GenerateArgs {
  std::string vocab;
  std::string attachments;
  std::string ops;
  int num = 100;
  std::string mode = "sample";
  int top_k = 0;
  double temperature = 1.0;
  double cyclize_weight = 1.0;
  std::uint64_t seed = 0;
  int max_steps = 100;
  std::string out;
  int threads = default_thread_count();
};

void run_generate(const GenerateArgs& a) {
  std::string attach = a.attachments;
  if (attach.empty()) {
    const auto sibling = std::filesystem::path(a.vocab).parent_path() / "attachments.txt";
    if (std::filesystem::exists(sibling)) attach = sibling.string();
  }
  // The ops file is not needed to generate; it is checked so that a
  // mismatched artifact directory fails early.
  if (!a.ops.empty()) load_ops(a.ops);
  const MotifVocabulary vocab = load_vocab(a.vocab, attach);
  const FrequencyPolicy policy(vocab, a.cyclize_weight);
  GenerationConfig config;
  config.num = a.num;
  config.sampling.mode = a.mode == "greedy" ? GenerationMode::kGreedy : GenerationMode::kDistributional;
  config.sampling.top_k = a.top_k;
  config.sampling.temperature = a.temperature;
  config.seed = a.seed;
  config.max_steps = a.max_steps;
  config.threads = a.threads;
  const GenerationReport report = generate(vocab, policy, config);
  with_output(a.out, [&](std::ostream& out) {
    for (const MolGraph& m : report.molecules) out << write_smiles(m) << '\n';
  });
  std::cerr << "requested=" << a.num << " emitted=" << report.emitted
            << " aborted=" << report.aborted << " errors=" << report.failed << '\n';
  for (const auto& [name, count] : report.errors) std::cerr << "  " << name << '=' << count << '\n';
}

struct EvalArgs {
  std::string generated;
  std::string train;
  std::string report;
};

void run_eval(const EvalArgs& a) {
  const std::vector<MolGraph> train = load_corpus(a.train);
  std::ifstream in = open_input(a.generated);
  std::vector<std::optional<MolGraph>> generated;
  for (const CorpusEntry& e : read_corpus(in)) {
    try {
      generated.emplace_back(parse_smiles(e.smiles));
    } catch (const SmilesError&) {
      generated.emplace_back(std::nullopt);
    }
  }
  const EvalReport report = evaluate(std::span<const std::optional<MolGraph>>(generated), train);
  with_output(a.report, [&](std::ostream& out) { write_eval_report(out, report); });
}

void run_inspect(const std::string& vocab_path) {
  const MotifVocabulary vocab = load_vocab(vocab_path, "");
  std::vector<const Motif*> order;
  for (const Motif& m : vocab.motifs()) order.push_back(&m);
  std::stable_sort(order.begin(), order.end(),
                   [](const Motif* a, const Motif* b) { return a->frequency > b->frequency; });
  std::cout << vocab.size() << " motifs\n";
  for (const Motif* m : order) {
    std::cout << m->frequency << '\t' << m->smiles << '\t' << m->sites.size() << " sites\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graphbpe: connection-aware motif mining and generation"};
  app.footer(kSmilesHelp);
  app.require_subcommand(1);

  MineArgs mine;
  auto* mine_cmd = app.add_subcommand("mine", "learn merge operations and a motif vocabulary");
  mine_cmd->add_option("--corpus", mine.corpus, "training SMILES file")->required()->check(CLI::ExistingFile);
  mine_cmd->add_option("-K,--operations", mine.k, "number of merge operations")->required()->check(CLI::NonNegativeNumber);
  mine_cmd->add_option("--out", mine.out_dir, "output directory for ops.txt, vocab.txt, attachments.txt")->required();
  mine_cmd->add_option("--threads", mine.threads, "worker threads")->check(CLI::PositiveNumber);

  FragmentizeArgs frag;
  auto* frag_cmd = app.add_subcommand("fragmentize", "split molecules into motifs with learned operations");
  frag_cmd->add_option("--corpus", frag.corpus)->required()->check(CLI::ExistingFile);
  frag_cmd->add_option("--ops", frag.ops)->required()->check(CLI::ExistingFile);
  frag_cmd->add_option("--out", frag.out, "output file (default: stdout)");
  frag_cmd->add_flag("--sites", frag.sites, "print connection-aware motifs with '*' sites");

  TrajectoryArgs traj;
  auto* traj_cmd = app.add_subcommand("trajectories", "write generation trajectories as JSON lines");
  traj_cmd->add_option("--corpus", traj.corpus)->required()->check(CLI::ExistingFile);
  traj_cmd->add_option("--ops", traj.ops)->required()->check(CLI::ExistingFile);
  traj_cmd->add_option("--out", traj.out, "output file (default: stdout)");

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "generate molecules with the frequency policy");
  gen_cmd->add_option("--vocab", gen.vocab)->required()->check(CLI::ExistingFile);
  gen_cmd->add_option("--attachments", gen.attachments, "attachment table (default: attachments.txt next to the vocabulary)")->check(CLI::ExistingFile);
  gen_cmd->add_option("--ops", gen.ops, "ops file of the same run (validated only)")->check(CLI::ExistingFile);
  gen_cmd->add_option("--num", gen.num)->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--mode", gen.mode)->check(CLI::IsMember({"greedy", "sample"}));
  gen_cmd->add_option("--top-k", gen.top_k, "sample from the k best candidates (0: all)")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--temperature", gen.temperature)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--cyclize-weight", gen.cyclize_weight)->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--max-steps", gen.max_steps)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--out", gen.out, "output SMILES file (default: stdout)");
  gen_cmd->add_option("--threads", gen.threads)->check(CLI::PositiveNumber);

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "validity, uniqueness, novelty and KL score");
  eval_cmd->add_option("--generated", ev.generated)->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--train", ev.train)->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--report", ev.report, "report file (default: stdout)");

  std::string inspect_path;
  auto* inspect_cmd = app.add_subcommand("inspect-vocab", "list motifs by frequency");
  inspect_cmd->add_option("--vocab", inspect_path)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*mine_cmd) run_mine(mine);
    if (*frag_cmd) run_fragmentize(frag);
    if (*traj_cmd) run_trajectories(traj);
    if (*gen_cmd) run_generate(gen);
    if (*eval_cmd) run_eval(ev);
    if (*inspect_cmd) run_inspect(inspect_path);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CorpusError& e) {
    std::cerr << "error: line " << e.line() << ": " << e.what() << '\n';
    return kExitParse;
  } catch (const FormatError& e) {
    std::cerr << "error: line " << e.line() << ": " << e.what() << '\n';
    return e.kind() == FormatError::Kind::kVersion ? kExitVersion : kExitParse;
  } catch (const GenerationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const EvalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
