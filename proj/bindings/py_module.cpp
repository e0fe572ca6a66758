#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>

#include "chromalex/analysis.hpp"
#include "chromalex/cli.hpp"
#include "chromalex/colorspace.hpp"
#include "chromalex/embedding.hpp"
#include "chromalex/imaging.hpp"
#include "chromalex/pipeline.hpp"
#include "chromalex/store.hpp"
#include "chromalex/version.hpp"

namespace py = pybind11;

namespace {

using chromalex::embedding::ColorDistribution;

ColorDistribution to_distribution(const std::vector<double>& v) {
  if (v.size() != chromalex::embedding::kBins) {
    throw py::value_error("distribution must have 8 components");
  }
  ColorDistribution d;
  std::copy(v.begin(), v.end(), d.mass.begin());
  return d;
}

std::vector<double> from_distribution(const ColorDistribution& d) {
  return {d.mass.begin(), d.mass.end()};
}

py::dict record_to_dict(const chromalex::embedding::WordColorEmbedding& rec) {
  py::dict out;
  out["word"] = rec.word;
  out["jzazbz-dist"] = from_distribution(rec.jzazbz_dist);
  if (rec.jzazbz_dist_std) {
    out["jzazbz-dist-std"] =
        std::vector<double>(rec.jzazbz_dist_std->begin(), rec.jzazbz_dist_std->end());
  }
  out["rgb-dist"] = from_distribution(rec.rgb_dist);
  out["jzazbz-vector"] =
      std::vector<double>(rec.jzazbz_vector.begin(), rec.jzazbz_vector.end());
  out["rgb-vector"] = std::vector<double>(rec.rgb_vector.begin(), rec.rgb_vector.end());
  out["colorgram"] = rec.colorgram_path;
  if (rec.concreteness_mean) out["concreteness-mean"] = *rec.concreteness_mean;
  if (rec.concreteness_sd) out["concreteness-sd"] = *rec.concreteness_sd;
  out["image-count"] = rec.image_count;
  return out;
}

}  // namespace

PYBIND11_MODULE(_chromalex, m) {
  m.doc() = "perceptual word-color embeddings";
  m.attr("__version__") = chromalex::kVersion;

  m.def(
      "srgb_to_jzazbz",
      [](int r, int g, int b) {
        if (r < 0 || r > 255 || g < 0 || g > 255 || b < 0 || b > 255) {
          throw py::value_error("channels must be in [0, 255]");
        }
        const auto c = chromalex::colorspace::srgb_to_jzazbz(
            {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
             static_cast<std::uint8_t>(b)});
        return py::make_tuple(c.jz, c.az, c.bz);
      },
      py::arg("r"), py::arg("g"), py::arg("b"));

  m.def(
      "jzazbz_to_srgb",
      [](double jz, double az, double bz) {
        const auto p = chromalex::colorspace::jzazbz_to_srgb({jz, az, bz});
        return py::make_tuple(static_cast<int>(p.r), static_cast<int>(p.g),
                              static_cast<int>(p.b));
      },
      py::arg("jz"), py::arg("az"), py::arg("bz"));

  m.def(
      "kl_divergence",
      [](const std::vector<double>& p, const std::vector<double>& q) {
        return chromalex::embedding::kl_divergence(to_distribution(p),
                                                   to_distribution(q));
      },
      py::arg("p"), py::arg("q"));

  m.def(
      "js_divergence",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        return chromalex::embedding::js_divergence(to_distribution(a),
                                                   to_distribution(b));
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "cosine_similarity",
      [](const std::vector<double>& u, const std::vector<double>& v) {
        return chromalex::embedding::cosine_similarity(u, v);
      },
      py::arg("u"), py::arg("v"));

  m.def(
      "image_histogram",
      [](const std::string& path) {
        const auto img = chromalex::imaging::load_image_file(path);
        const auto canon = chromalex::imaging::resize_antialiased(img);
        const auto jz = chromalex::imaging::to_jzazbz(canon);
        return from_distribution(chromalex::embedding::histogram_jzazbz(
            jz, chromalex::embedding::BinGrid::standard()));
      },
      py::arg("path"), "8-bin color distribution of one image file");

  m.def(
      "embed_word",
      [](const std::string& word, const std::vector<std::string>& paths,
         bool include_std) {
        std::vector<std::filesystem::path> files(paths.begin(), paths.end());
        chromalex::pipeline::EmbedOptions opts;
        opts.include_std = include_std;
        const auto result = chromalex::pipeline::embed_word(word, files, opts);
        return record_to_dict(result.record);
      },
      py::arg("word"), py::arg("image_paths"), py::arg("include_std") = true);

  m.def(
      "load_embeddings",
      [](const std::string& path) {
        py::dict out;
        for (const auto& [word, rec] : chromalex::store::load_embeddings(path)) {
          out[py::str(word)] = record_to_dict(rec);
        }
        return out;
      },
      py::arg("path"));

  m.def(
      "binned_trend",
      [](const std::vector<double>& x, const std::vector<double>& y, int bins) {
        py::list out;
        for (const auto& bin : chromalex::analysis::binned_trend(x, y, bins)) {
          out.append(py::make_tuple(bin.mean_x, bin.mean_y, bin.count));
        }
        return out;
      },
      py::arg("x"), py::arg("y"), py::arg("bins") = 40);

  m.def(
      "wilcoxon_rank_sum",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        const auto r = chromalex::analysis::wilcoxon_rank_sum(a, b);
        return py::make_tuple(r.statistic, r.p_value);
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "jonckheere_terpstra",
      [](const std::vector<std::vector<double>>& groups) {
        const auto r = chromalex::analysis::jonckheere_terpstra(groups);
        return py::make_tuple(r.statistic, r.p_value);
      },
      py::arg("groups"));

  m.def("run_cli", &chromalex::run_cli, py::arg("args"),
        "run the command-line tool in-process; returns its exit code");
}
