#include <random>

#include "bppm/error.hpp"
#include "bppm/inference.hpp"

namespace bppm::infer {
namespace {

FitResult hard_fit(const EventStream& stream, const ClassAssignment& c, const LocalSearchOptions& opt) {
  const BlockFit bf = fit_block_params(stream, c, opt.fit, opt.likelihood);
  FitResult out;
  out.assignment = c;
  out.model = BlockHawkesModel(class_frequencies(c), bf.params);
  out.objective = bf.objective;
  out.trace = {bf.objective};
  out.converged = true;
  return out;
}

ClassAssignment random_labels(std::size_t n, int k, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, k - 1);
  std::vector<int> labels(n);
  for (auto& l : labels) l = pick(rng);
  return ClassAssignment(std::move(labels), k);
}

}  // namespace

Method parse_method(const std::string& name) {
  if (name == "spectral") return Method::kSpectral;
  if (name == "spectral+ls") return Method::kSpectralLocalSearch;
  if (name == "spectral+vem") return Method::kSpectralVem;
  if (name == "random+ls") return Method::kRandomLocalSearch;
  if (name == "random+vem") return Method::kRandomVem;
  throw ArgumentError("unknown method '" + name + "'");
}

std::string method_name(Method m) {
  switch (m) {
    case Method::kSpectral: return "spectral";
    case Method::kSpectralLocalSearch: return "spectral+ls";
    case Method::kSpectralVem: return "spectral+vem";
    case Method::kRandomLocalSearch: return "random+ls";
    case Method::kRandomVem: return "random+vem";
  }
  return "unknown";
}

FitResult fit(const EventStream& stream, int k, Method method, const PipelineOptions& options) {
  if (k < 1) throw ArgumentError("number of classes must be >= 1");
  if (stream.num_nodes() < 2) throw ArgumentError("a network needs at least two nodes");

  if (method == Method::kSpectral || method == Method::kSpectralLocalSearch || method == Method::kSpectralVem) {
    spectral::SpectralOptions so = options.spectral;
    so.kmeans.seed = derive_seed(options.seed, {0});
    const auto sc = spectral::spectral_cluster(aggregate_all(stream), k, so);
    switch (method) {
      case Method::kSpectral: return hard_fit(stream, sc.labels, options.local_search);
      case Method::kSpectralLocalSearch: return local_search(stream, sc.labels, options.local_search);
      default: return variational_em(stream, spectral::soft_initialization(sc.embedding, k), options.vem);
    }
  }

  if (options.restarts < 1) throw ArgumentError("restarts must be >= 1");
  FitResult best;
  for (int r = 0; r < options.restarts; ++r) {
    Rng rng = make_rng(options.seed, {1, static_cast<std::uint64_t>(r)});
    FitResult cur = method == Method::kRandomLocalSearch
                        ? local_search(stream, random_labels(stream.num_nodes(), k, rng), options.local_search)
                        : variational_em(stream, random_soft_assignment(stream.num_nodes(), k, rng), options.vem);
    if (r == 0 || cur.objective > best.objective) {
      best = std::move(cur);
      best.diagnostic = "best of " + std::to_string(options.restarts) + " restarts: #" + std::to_string(r) +
                        (best.diagnostic.empty() ? "" : "; " + best.diagnostic);
    }
  }
  return best;
}

}  // namespace bppm::infer
