#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "cli.hpp"
#include "zslt/eval.hpp"
#include "zslt/version.hpp"

namespace py = pybind11;
using namespace zslt;

namespace {

// A loaded checkpoint plus the BPE model stored beside it.
class Checkpoint {
 public:
  explicit Checkpoint(const std::filesystem::path& path) {
    dir_ = std::filesystem::exists(path / "checkpoint" / "manifest.json") ? path / "checkpoint" : path;
    reg_ = load_checkpoint(dir_);
    bpe_ = BpeModel::load(dir_ / "bpe.model");
    if (!reg_.vocab_hash.empty() && bpe_.hash() != reg_.vocab_hash) {
      throw ConfigError("vocabulary mismatch between " + (dir_ / "bpe.model").string() + " and the checkpoint");
    }
  }

  std::vector<std::string> keys() const {
    std::vector<std::string> out;
    for (const auto& k : reg_.keys()) out.push_back(k.str());
    return out;
  }
  std::size_t param_count(const std::string& key) const { return reg_.module(ModuleKey::parse(key)).param_count(); }
  bool frozen(const std::string& key) const { return reg_.frozen(ModuleKey::parse(key)); }
  bool route_trained(const std::string& src, const std::string& tgt) const {
    return reg_.route_trained(ModuleKey::parse(src), ModuleKey::parse(tgt));
  }

  std::vector<std::pair<std::string, std::string>> translate(const std::filesystem::path& manifest,
                                                             const std::string& src_key, const std::string& tgt_key,
                                                             const std::string& split, std::size_t threads) const {
    const auto src = ModuleKey::parse(src_key), tgt = ModuleKey::parse(tgt_key);
    reg_.route(src, tgt);
    const auto data = dataset(manifest, src, tgt.lang, split);
    DecodeOptions opt;
    opt.threads = threads;
    std::vector<std::string> hyps;
    {
      py::gil_scoped_release release;
      hyps = translate_dataset(reg_, src, tgt, data, bpe_, opt);
    }
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t i = 0; i < hyps.size(); ++i) out.emplace_back(data.ids[i], hyps[i]);
    return out;
  }

  // Mean-pooled encoder states, one row per utterance.
  std::pair<std::vector<std::string>, py::array_t<double>> representations(const std::filesystem::path& manifest,
                                                                           const std::string& key,
                                                                           const std::string& stage,
                                                                           const std::string& split) const {
    const auto k = ModuleKey::parse(key);
    Stage st = Stage::kText;
    if (stage == "pre_adapter") {
      st = Stage::kPreAdapter;
    } else if (stage == "post_adapter") {
      st = Stage::kPostAdapter;
    } else if (stage != "text") {
      throw ConfigError("unknown stage '" + stage + "'");
    }
    std::string tgt;
    for (const auto& d : reg_.keys()) {
      if (d.role == Role::kDecoder && (k.modality == Modality::kSpeech || d.lang != k.lang)) {
        tgt = d.lang;
        break;
      }
    }
    if (tgt.empty()) throw NotFoundError("checkpoint has no decoder to pair " + key + " data with");
    const auto data = dataset(manifest, k, tgt, split);
    const auto set = extract_representations(reg_, k, data, st, key);
    const std::size_t d = set.vectors.empty() ? 0 : set.vectors[0].size();
    py::array_t<double> arr({set.vectors.size(), d});
    auto view = arr.mutable_unchecked<2>();
    for (std::size_t i = 0; i < set.vectors.size(); ++i) {
      for (std::size_t j = 0; j < d; ++j) view(i, j) = set.vectors[i][j];
    }
    return {set.ids, arr};
  }

  const BpeModel& bpe() const { return bpe_; }
  std::string path() const { return dir_.string(); }

 private:
  Dataset dataset(const std::filesystem::path& manifest, const ModuleKey& src, const std::string& tgt_lang,
                  const std::string& split) const {
    const auto m = read_manifest(manifest);
    auto data = src.modality == Modality::kSpeech ? speech_dataset(m, bpe_, src.lang, tgt_lang, split)
                                                  : text_dataset(m, bpe_, src.lang, tgt_lang, split);
    if (data.size() == 0) throw InputError("no " + src.lang + " -> " + tgt_lang + " records in split " + split);
    return data;
  }

  std::filesystem::path dir_;
  Registry reg_;
  BpeModel bpe_;
};

RepresentationSet to_set(const std::string& label, const std::vector<std::string>& ids,
                         const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
  if (arr.ndim() != 2) throw DimensionError("expected a 2-D array");
  if (static_cast<std::size_t>(arr.shape(0)) != ids.size()) throw DimensionError("one id per row required");
  RepresentationSet s{label, ids, {}};
  auto v = arr.unchecked<2>();
  for (py::ssize_t i = 0; i < arr.shape(0); ++i) {
    std::vector<double> row(static_cast<std::size_t>(arr.shape(1)));
    for (py::ssize_t j = 0; j < arr.shape(1); ++j) row[static_cast<std::size_t>(j)] = v(i, j);
    s.vectors.push_back(std::move(row));
  }
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Core bindings: BPE, metrics, checkpoints, analyses and the command-line entry point.";

  auto base = py::register_exception<Error>(m, "ZsltError");
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<NotFoundError>(m, "NotFoundError", base.ptr());
  py::register_exception<ConflictError>(m, "ConflictError", base.ptr());
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());
  py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());

  m.def("version", [] { return std::string(version()); });

  py::class_<BpeModel>(m, "BpeModel")
      .def_static("train", &BpeModel::train, py::arg("lines"), py::arg("n_merges"))
      .def_static("load", &BpeModel::load, py::arg("path"))
      .def("save", &BpeModel::save, py::arg("path"))
      .def("encode", &BpeModel::encode, py::arg("text"))
      .def("decode", [](const BpeModel& b, const std::vector<std::int32_t>& ids) { return b.decode(ids); },
           py::arg("ids"))
      .def("tokenize", &BpeModel::tokenize, py::arg("text"))
      .def("segment_word", &BpeModel::segment_word, py::arg("word"))
      .def_property_readonly("merges", &BpeModel::merges)
      .def_property_readonly("vocab_size", &BpeModel::vocab_size)
      .def_property_readonly("hash", &BpeModel::hash);

  m.def("bleu", &bleu, py::arg("hypotheses"), py::arg("references"));
  m.def("wer", &wer, py::arg("hypotheses"), py::arg("references"));
  m.def("edit_distance", &edit_distance, py::arg("a"), py::arg("b"));
  m.def("adapter_param_count", [](std::size_t d_model, std::size_t d_proj) {
    return Adapter<float>::param_count({d_model, d_proj, true});
  }, py::arg("d_model"), py::arg("d_proj"));

  m.def(
      "retrieval_top1",
      [](const std::vector<std::string>& q_ids, const py::array_t<double, py::array::c_style | py::array::forcecast>& q,
         const std::vector<std::string>& k_ids, const py::array_t<double, py::array::c_style | py::array::forcecast>& k) {
        const auto r = retrieval_top1(to_set("queries", q_ids, q), to_set("keys", k_ids, k));
        return py::dict(py::arg("accuracy") = r.accuracy, py::arg("evaluated") = r.evaluated,
                        py::arg("skipped") = r.skipped, py::arg("nearest") = r.nearest);
      },
      py::arg("query_ids"), py::arg("queries"), py::arg("key_ids"), py::arg("keys"));

  m.def(
      "project_2d",
      [](const std::vector<std::tuple<std::string, std::vector<std::string>,
                                      py::array_t<double, py::array::c_style | py::array::forcecast>>>& sets) {
        std::vector<RepresentationSet> in;
        for (const auto& [label, ids, arr] : sets) in.push_back(to_set(label, ids, arr));
        std::vector<std::tuple<std::string, std::string, double, double>> out;
        for (const auto& p : project_2d(in)) out.emplace_back(p.label, p.id, p.x, p.y);
        return out;
      },
      py::arg("sets"), "PCA of (label, ids, array) sets; returns (label, id, x, y) rows.");

  py::class_<Checkpoint>(m, "Checkpoint")
      .def(py::init<const std::filesystem::path&>(), py::arg("path"))
      .def_property_readonly("path", &Checkpoint::path)
      .def_property_readonly("bpe", &Checkpoint::bpe, py::return_value_policy::reference_internal)
      .def("keys", &Checkpoint::keys)
      .def("param_count", &Checkpoint::param_count, py::arg("key"))
      .def("frozen", &Checkpoint::frozen, py::arg("key"))
      .def("route_trained", &Checkpoint::route_trained, py::arg("src"), py::arg("tgt"))
      .def("translate", &Checkpoint::translate, py::arg("manifest"), py::arg("src_key"), py::arg("tgt_key"),
           py::arg("split") = "test", py::arg("threads") = 1)
      .def("representations", &Checkpoint::representations, py::arg("manifest"), py::arg("key"),
           py::arg("stage") = "post_adapter", py::arg("split") = "test");

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "zslt");
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = cli::run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one zslt subcommand in-process; returns (exit_code, stdout, stderr).");
}
