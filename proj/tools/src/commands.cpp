// Copyright 2026 The Origami Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <future>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "origami/accounting.hpp"
#include "origami/blinding.hpp"
#include "origami/enclave.hpp"
#include "origami/executor.hpp"
#include "origami/feature_maps.hpp"
#include "origami/image_io.hpp"
#include "origami/partition.hpp"
#include "origami/report.hpp"
#include "origami/ssim.hpp"

namespace origami::cli {
namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kDefaultModes = {"baseline2", "split", "slalom", "origami",
                                                "untrusted"};

std::string builtin_config(const std::string& name) {
  if (name == "vgg16") return vgg_config(16);
  if (name == "vgg19") return vgg_config(19);
  if (name == "toy5") return toy_config();
  return {};
}

// A file path, or one of the built-in names vgg16, vgg19, toy5.
ModelGraph load_graph(const std::string& path) {
  if (path.empty()) throw UsageError("--model is required");
  if (!fs::exists(path)) {
    const auto text = builtin_config(path);
    if (text.empty()) throw UsageError("model config not found: " + path);
    return parse_model_config(text);
  }
  return parse_model_config(read_text_file(path));
}

Model load_weights(const ModelGraph& graph, const std::string& weights, std::uint64_t seed) {
  if (weights.empty()) {
    const auto records = random_weights(graph, seed);
    return attach_weights(graph, records);
  }
  const auto text = read_text_file(weights);
  const std::vector<std::uint8_t> bytes(text.begin(), text.end());
  const auto records = decode_weights(bytes);
  return attach_weights(graph, records);
}

SimConfig load_sim(const std::string& path) {
  if (path.empty()) return {};
  return parse_sim_config(read_text_file(path));
}

std::vector<ExecutionMode> resolve_modes(const std::vector<std::string>& names, int partition,
                                         const ModelGraph& graph) {
  std::vector<ExecutionMode> out;
  for (const auto& n : names) {
    if (n == "split" || n == "origami") {
      if (partition < 1) throw UsageError("mode '" + n + "' needs --partition");
      out.push_back(parse_mode(n + "/" + std::to_string(partition)));
    } else {
      out.push_back(parse_mode(n));
    }
    make_plan(out.back(), graph);
  }
  return out;
}

std::vector<FloatTensor> random_inputs(const Shape& shape, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<FloatTensor> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v(element_count(shape));
    for (auto& x : v) x = u(rng);
    out.emplace_back(shape, std::move(v));
  }
  return out;
}

// Orderings the memory, recovery and runtime models are expected to show.
std::vector<std::string> ordering_violations(const std::vector<InferenceTrace>& traces) {
  std::vector<std::string> bad;
  std::vector<const InferenceTrace*> splits;
  const InferenceTrace *base = nullptr, *slalom = nullptr, *orig = nullptr, *untrusted = nullptr;
  for (const auto& t : traces) {
    switch (t.mode.kind) {
      case ModeKind::kSplit: splits.push_back(&t); break;
      case ModeKind::kBaseline2: base = &t; break;
      case ModeKind::kSlalomPrivacy: slalom = &t; break;
      case ModeKind::kOrigami: orig = &t; break;
      case ModeKind::kUntrustedOnly: untrusted = &t; break;
    }
  }
  std::sort(splits.begin(), splits.end(),
            [](auto* a, auto* b) { return a->partition < b->partition; });
  const auto check = [&](bool ok, const std::string& what) {
    if (!ok) bad.push_back(what);
  };
  for (std::size_t i = 1; i < splits.size(); ++i) {
    const auto& a = *splits[i - 1];
    const auto& b = *splits[i];
    check(a.peak_memory_bytes < b.peak_memory_bytes,
          "peak memory " + mode_name(a.mode) + " < " + mode_name(b.mode));
    check(a.recovery_ms < b.recovery_ms, "recovery " + mode_name(a.mode) + " < " + mode_name(b.mode));
  }
  if (!splits.empty() && slalom) {
    check(splits.back()->peak_memory_bytes < slalom->peak_memory_bytes,
          "peak memory " + mode_name(splits.back()->mode) + " < slalom");
  }
  if (slalom && orig) {
    check(slalom->peak_memory_bytes == orig->peak_memory_bytes, "peak memory slalom = origami");
    check(blinded_bytes_accounting(*orig).total() < blinded_bytes_accounting(*slalom).total(),
          "blinded bytes origami < slalom");
    check(orig->totals().total_ms < slalom->totals().total_ms, "runtime origami < slalom");
  }
  if (base) {
    if (slalom) check(slalom->peak_memory_bytes < base->peak_memory_bytes, "peak memory slalom < baseline2");
    if (!splits.empty()) {
      check(splits.back()->recovery_ms < base->recovery_ms,
            "recovery " + mode_name(splits.back()->mode) + " < baseline2");
      check(splits.front()->totals().total_ms < base->totals().total_ms,
            "runtime " + mode_name(splits.front()->mode) + " < baseline2");
    }
  }
  if (slalom && !splits.empty()) {
    check(slalom->totals().total_ms < splits.front()->totals().total_ms,
          "runtime slalom < " + mode_name(splits.front()->mode));
  }
  if (untrusted && orig) {
    check(untrusted->totals().total_ms < orig->totals().total_ms, "runtime untrusted < origami");
  }
  return bad;
}

struct RunOptions {
  std::string model;
  std::string weights;
  std::vector<std::string> modes = kDefaultModes;
  int partition = 0;
  std::string cost;
  std::string dataset;
  std::uint64_t seed = 1;
  std::string out;
  std::size_t inputs = 1;
  bool simulate = false;
  std::string transport = "inproc";
  bool assert_orderings = false;
};

void apply_run_config(RunOptions& o, const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, "experiment config " + path + ": " + e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::kParse, "experiment config " + path + " must be an object");
  try {
    for (const auto& [k, v] : doc.items()) {
      if (k == "model") o.model = v.get<std::string>();
      else if (k == "weights") o.weights = v.get<std::string>();
      else if (k == "modes") o.modes = v.get<std::vector<std::string>>();
      else if (k == "partition") o.partition = v.get<int>();
      else if (k == "cost") o.cost = v.get<std::string>();
      else if (k == "dataset") o.dataset = v.get<std::string>();
      else if (k == "seed") o.seed = v.get<std::uint64_t>();
      else if (k == "out") o.out = v.get<std::string>();
      else if (k == "inputs") o.inputs = v.get<std::size_t>();
      else if (k == "simulate") o.simulate = v.get<bool>();
      else if (k == "transport") o.transport = v.get<std::string>();
      else if (k == "assert_orderings") o.assert_orderings = v.get<bool>();
      else fail(ErrorCode::kParse, "experiment config " + path + ": unknown key " + k);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, "experiment config " + path + ": " + e.what());
  }
}

std::vector<InferenceResult> run_mode(const Model& model, const PartitionPlan& plan,
                                      const SimConfig& sim, const std::vector<FloatTensor>& images,
                                      std::uint64_t seed, const std::string& transport) {
  UntrustedWorker worker(model);
  worker.guard(plan);
  std::unique_ptr<LoopbackServer> server;
  std::unique_ptr<WorkerTransport> channel;
  if (transport == "socket") {
    server = std::make_unique<LoopbackServer>(worker);
    channel = std::make_unique<SocketTransport>(server->port());
  } else {
    channel = std::make_unique<InProcessTransport>(worker);
  }
  const auto keys = SessionKeys::from_seed(seed);
  InferenceSession session(model, plan, sim, *channel, keys);
  std::vector<InferenceResult> out;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto input = encrypt_input(images[i], keys.input);
    out.push_back(session.run(i + 1, input));
  }
  channel.reset();
  return out;
}

int cmd_run(RunOptions o, const std::string& config_path, std::ostream& out, std::ostream& err) {
  if (!config_path.empty()) apply_run_config(o, config_path);
  if (o.transport != "inproc" && o.transport != "socket") {
    throw UsageError("--transport must be inproc or socket");
  }
  const auto graph = load_graph(o.model);
  const auto sim = load_sim(o.cost);
  const auto modes = resolve_modes(o.modes, o.partition, graph);
  std::vector<InferenceTrace> traces;
  if (o.simulate) {
    for (const auto& m : modes) traces.push_back(simulate_trace(graph, make_plan(m, graph), sim, 1));
  } else {
    const auto model = load_weights(graph, o.weights, o.seed);
    std::vector<FloatTensor> images;
    if (!o.dataset.empty()) {
      for (auto& d : load_dataset(o.dataset)) images.push_back(std::move(d.image));
    } else {
      images = random_inputs(graph.input_shape(), std::max<std::size_t>(1, o.inputs), o.seed);
    }
    if (images.empty()) fail(ErrorCode::kInvalidArgument, "dataset " + o.dataset + " has no images");
    std::vector<std::future<std::vector<InferenceResult>>> jobs;
    for (const auto& m : modes) {
      jobs.push_back(std::async(std::launch::async, [&, plan = make_plan(m, graph)] {
        return run_mode(model, plan, sim, images, o.seed, o.transport);
      }));
    }
    std::vector<std::vector<InferenceResult>> results;
    for (auto& j : jobs) results.push_back(j.get());
    for (std::size_t m = 1; m < results.size(); ++m) {
      for (std::size_t i = 0; i < images.size(); ++i) {
        if (!(results[m][i].probabilities == results[0][i].probabilities)) {
          fail(ErrorCode::kInvalidArgument, "output of " + mode_name(modes[m]) + " differs from " +
                                                mode_name(modes[0]) + " on input " +
                                                std::to_string(i + 1));
        }
      }
    }
    for (auto& r : results) traces.push_back(std::move(r.front().trace));
    if (!modes.empty()) {
      out << "outputs identical across " << modes.size() << " modes for " << images.size()
          << " input(s)\n";
    }
  }
  if (!o.out.empty()) {
    fs::create_directories(o.out);
    for (const auto& t : traces) write_text_file(fs::path(o.out) / trace_file_name(t), trace_to_json(t));
    write_text_file(fs::path(o.out) / "summary.csv", format_csv(summary_table(traces)));
  }
  out << format_csv(summary_table(traces));
  if (o.assert_orderings) {
    const auto bad = ordering_violations(traces);
    for (const auto& b : bad) err << "ordering violated: " << b << "\n";
    if (!bad.empty()) return kExitError;
    out << "orderings hold\n";
  }
  return kExitOk;
}

int cmd_validate(const std::string& model_path, const std::string& weights,
                 const std::string& cost, const std::vector<std::string>& modes, int partition,
                 const std::string& oracle, std::ostream& out) {
  const auto graph = load_graph(model_path);
  out << "model " << graph.name() << ": input " << shape_string(graph.input_shape()) << ", "
      << graph.size() << " layers, " << graph.parameterized_layers() << " parameterized\n";
  const auto fm = feature_map_bytes(graph);
  std::uint64_t macs = 0, params = 0;
  for (int i = 1; i <= graph.size(); ++i) {
    const auto& l = graph.layer(i);
    macs += l.macs();
    params += layer_params_bytes(graph, i) + layer_bias_bytes(graph, i);
    out << "  " << i << " " << l.name << " " << layer_kind_name(l.kind) << " "
        << shape_string(l.input_shape) << " -> " << shape_string(l.output_shape) << "\n";
  }
  out << "MACs " << macs << ", parameter bytes " << params << ", largest feature map "
      << fm.max_bytes << " B\n";
  if (!weights.empty()) {
    const auto m = load_weights(graph, weights, 0);
    out << "weights ok (" << m.weights.size() << " layers)\n";
  }
  const auto sim = load_sim(cost);
  if (!cost.empty()) out << "cost config ok\n";
  if (!modes.empty()) {
    for (const auto& m : resolve_modes(modes, partition, graph)) {
      const auto plan = make_plan(m, graph);
      out << "mode " << mode_name(m) << ": partition " << plan.partition << ", peak "
          << peak_memory(plan, graph, sim.policy, sim.enclave) << " B\n";
    }
  }
  if (!oracle.empty()) {
    const auto r = parse_oracle_results(read_text_file(oracle), oracle);
    out << "oracle results ok (" << r.mean_ssim.size() << " layers)\n";
  }
  return kExitOk;
}

int cmd_find_partition(std::string oracle, double tau, int layers, const std::string& model,
                       const std::string& config_path, const std::string& out_path,
                       std::ostream& out) {
  if (!config_path.empty()) {
    const auto doc = nlohmann::json::parse(read_text_file(config_path), nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
      fail(ErrorCode::kParse, "config " + config_path + " is not a JSON object");
    }
    if (doc.contains("oracle")) oracle = doc["oracle"].get<std::string>();
    if (doc.contains("threshold")) tau = doc["threshold"].get<double>();
    if (doc.contains("layers")) layers = doc["layers"].get<int>();
  }
  if (oracle.empty()) throw UsageError("--oracle is required");
  const auto results = parse_oracle_results(read_text_file(oracle), oracle);
  int count = layers;
  if (!model.empty()) count = load_graph(model).size();
  if (count <= 0) count = results.mean_ssim.empty() ? 0 : results.mean_ssim.rbegin()->first;
  const auto d = find_partition(count, oracle_from_results(results), tau);
  const auto text = format_decision(d);
  if (!out_path.empty()) write_text_file(out_path, text);
  out << text;
  return d.found() ? kExitOk : kExitNoPartition;
}

int cmd_export(const std::string& model_path, const std::string& weights, std::uint64_t seed,
               int layer, const std::string& dataset, const std::string& out_dir,
               std::ostream& out) {
  const auto graph = load_graph(model_path);
  const auto model = load_weights(graph, weights, seed);
  const auto images = load_dataset(dataset);
  const auto m = export_feature_maps(model, layer, images, out_dir);
  out << "exported " << m.entries.size() << " feature maps of layer " << layer << " ("
      << m.layer_name << ", " << shape_string(m.shape) << ") to "
      << (fs::path(out_dir) / m.maps_file).string() << "\n";
  return kExitOk;
}

int cmd_ssim(const std::string& real_dir, const std::string& fake_dir, double range, int layer,
             const std::string& out_path, const std::string& oracle_out, std::ostream& out) {
  const auto reals = list_images(real_dir);
  const auto fakes = list_images(fake_dir);
  std::map<std::string, fs::path> by_name;
  for (const auto& f : fakes) by_name[f.stem().string()] = f;
  std::vector<FloatTensor> a, b;
  std::vector<std::string> names;
  for (const auto& r : reals) {
    const auto it = by_name.find(r.stem().string());
    if (it == by_name.end()) fail(ErrorCode::kIo, "no reconstruction for " + r.filename().string());
    a.push_back(read_image(r));
    b.push_back(read_image(it->second));
    names.push_back(r.stem().string());
    by_name.erase(it);
  }
  if (!by_name.empty()) {
    fail(ErrorCode::kIo, "reconstruction without a real image: " + by_name.begin()->first);
  }
  SsimParams params;
  params.dynamic_range = range;
  const auto rep = mean_ssim(a, b, layer, params);
  CsvTable t;
  t.title = "origami-ssim v1";
  t.columns = {"layer", "image", "ssim"};
  char buf[32];
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6f", rep.values[i]);
    t.rows.push_back({std::to_string(layer), names[i], buf});
  }
  std::snprintf(buf, sizeof buf, "%.6f", rep.mean);
  t.rows.push_back({std::to_string(layer), "mean", buf});
  const auto text = format_csv(t);
  if (!out_path.empty()) write_text_file(out_path, text);
  if (!oracle_out.empty()) {
    if (layer < 1) throw UsageError("--oracle-out needs --layer >= 1");
    OracleResults r;
    if (fs::exists(oracle_out)) r = parse_oracle_results(read_text_file(oracle_out), oracle_out);
    r.mean_ssim[layer] = rep.mean;
    write_text_file(oracle_out, format_oracle_results(r));
  }
  out << text;
  return kExitOk;
}

int cmd_report(const std::string& dir, const std::string& out_dir, std::ostream& out) {
  std::vector<InferenceTrace> traces;
  for (auto& t : load_trace_dir(dir)) traces.push_back(std::move(t.trace));
  const auto files = build_report(traces);
  if (!out_dir.empty()) write_report(files, out_dir);
  out << files.text;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Split enclave/untrusted CNN inference simulator", "origami"};
  app.require_subcommand(1);

  std::string model, weights, cost, oracle, dataset, out_path, config, traces, real, fake,
      oracle_out, transport = "inproc";
  std::vector<std::string> modes;
  int partition = 0, layer = 0, layers = 0;
  double tau = threshold_default(), range = 1.0;
  std::uint64_t seed = 1;
  std::size_t inputs = 1;
  bool simulate = false, assert_orderings = false;

  auto* validate = app.add_subcommand("validate", "Check model, weights, cost and oracle files");
  validate->add_option("--model", model, "Model config file or vgg16|vgg19|toy5")->required();
  validate->add_option("--weights", weights, "Weights file (ORGW)");
  validate->add_option("--cost", cost, "Cost-model JSON");
  validate->add_option("--modes", modes, "Modes to check")->delimiter(',');
  validate->add_option("--partition", partition, "Layer index for split/origami");
  validate->add_option("--oracle", oracle, "Oracle results file");

  auto* run = app.add_subcommand("run", "Run inference under each mode and write traces");
  run->add_option("--model", model, "Model config file or vgg16|vgg19|toy5");
  run->add_option("--weights", weights, "Weights file (ORGW); random weights when omitted");
  run->add_option("--modes", modes, "baseline2,split,slalom,origami,untrusted or split/N ...")
      ->delimiter(',');
  run->add_option("--partition", partition, "Layer index for split/origami");
  run->add_option("--cost", cost, "Cost-model JSON");
  run->add_option("--dataset", dataset, "Image directory; random inputs when omitted");
  run->add_option("--inputs", inputs, "Number of random inputs")->capture_default_str();
  run->add_option("--seed", seed, "Seed for weights, inputs and keys")->capture_default_str();
  run->add_option("--out", out_path, "Output directory for traces and summary.csv");
  run->add_flag("--simulate", simulate, "Cost model only, no tensors");
  run->add_option("--transport", transport, "inproc or socket")->capture_default_str();
  run->add_flag("--assert-orderings", assert_orderings, "Fail when expected orderings break");
  run->add_option("--config", config, "Experiment JSON; its values override flags");

  auto* find = app.add_subcommand("find-partition", "Select the partition layer from oracle results");
  find->add_option("--oracle", oracle, "Oracle results file");
  find->add_option("--threshold", tau, "SSIM threshold in (0, 1)")->capture_default_str();
  find->add_option("--layers", layers, "Layer count (default: highest layer in the file)");
  find->add_option("--model", model, "Model config giving the layer count");
  find->add_option("--out", out_path, "Decision output file");
  find->add_option("--config", config, "JSON with oracle/threshold/layers; overrides flags");

  auto* exp = app.add_subcommand("export-maps", "Write feature maps of one layer for a dataset");
  exp->add_option("--model", model, "Model config file or vgg16|vgg19|toy5")->required();
  exp->add_option("--weights", weights, "Weights file (ORGW); random weights when omitted");
  exp->add_option("--seed", seed, "Seed for random weights")->capture_default_str();
  exp->add_option("--layer", layer, "Layer index")->required();
  exp->add_option("--dataset", dataset, "Image directory")->required();
  exp->add_option("--out", out_path, "Output directory")->required();

  auto* ss = app.add_subcommand("ssim", "Score reconstructions against real images");
  ss->add_option("--real", real, "Directory of real images")->required();
  ss->add_option("--fake", fake, "Directory of reconstructions (matched by file name)")->required();
  ss->add_option("--range", range, "Dynamic range of pixel values")->capture_default_str();
  ss->add_option("--layer", layer, "Layer the reconstructions came from");
  ss->add_option("--out", out_path, "CSV output file");
  ss->add_option("--oracle-out", oracle_out, "Oracle results file to update with the mean");

  auto* rep = app.add_subcommand("report", "Summarise a directory of traces");
  rep->add_option("--traces", traces, "Trace directory")->required();
  rep->add_option("--out", out_path, "Output directory for CSV and text reports");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed()) {
      return cmd_validate(model, weights, cost, modes, partition, oracle, out);
    }
    if (run->parsed()) {
      RunOptions o;
      o.model = model;
      o.weights = weights;
      if (!modes.empty()) o.modes = modes;
      o.partition = partition;
      o.cost = cost;
      o.dataset = dataset;
      o.seed = seed;
      o.out = out_path;
      o.inputs = inputs;
      o.simulate = simulate;
      o.transport = transport;
      o.assert_orderings = assert_orderings;
      return cmd_run(o, config, out, err);
    }
    if (find->parsed()) {
      return cmd_find_partition(oracle, tau, layers, model, config, out_path, out);
    }
    if (exp->parsed()) return cmd_export(model, weights, seed, layer, dataset, out_path, out);
    if (ss->parsed()) return cmd_ssim(real, fake, range, layer, out_path, oracle_out, out);
    if (rep->parsed()) return cmd_report(traces, out_path, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace origami::cli
