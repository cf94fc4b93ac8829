#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "ivams/error.hpp"
#include "ivams/rng.hpp"
#include "ivams/vams_codegen.hpp"
#include "test_util.hpp"

using namespace ivams;

namespace {

AnnModel random_ann(Rng& r, std::size_t n, std::size_t m) {
  AnnModel model = AnnModel::zeros(n, m);
  for (auto& v : model.w1.reshaped()) v = r.uniform(-2, 2);
  for (auto& v : model.b1) v = r.uniform(-1, 1);
  for (auto& v : model.w2) v = r.uniform(-1, 1);
  model.b2 = r.uniform(-1, 1);
  std::vector<double> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = r.uniform(0, 1e-6);
    hi[i] = lo[i] + r.uniform(1e-6, 2e-5);
  }
  model.input_scaler = Scaler::minmax(lo, hi);
  model.output_scaler = Scaler::meanstd({r.uniform(-50, 50)}, {r.uniform(0.5, 20)});
  return model;
}

// The exact loop nn_metamodel runs: weights consumed in file order.
double vams_reference(const WeightBundle& b, std::span<const double> x) {
  std::istringstream w1(b.w1), w2(b.w2), b1(b.b1), b2(b.b2);
  double v = 0.0, w, bias;
  for (std::size_t j = 0; j < b.nl; ++j) {
    double u = 0.0;
    for (std::size_t i = 0; i < b.size_x; ++i) {
      w1 >> w;
      u += w * x[i];
    }
    w2 >> w;
    b1 >> bias;
    v += w * std::tanh(u + bias);
  }
  b2 >> bias;
  return v + bias;
}

std::size_t count_tokens(const std::string& s) {
  std::istringstream in(s);
  std::size_t n = 0;
  for (std::string t; in >> t;) ++n;
  return n;
}

MacromodelSpec small_spec() {
  MacromodelSpec spec;
  spec.design_variables = {{"w1", 1e-6, 20e-6}, {"l1", 0.18e-6, 1e-6}};
  return spec;
}

std::map<std::string, WeightBundle> small_bundles() {
  std::map<std::string, WeightBundle> out;
  const char* names[] = {"gm", "i_p", "i_n"};
  const char* prefixes[] = {"gm_", "ip_", "in_"};
  for (int k = 0; k < 3; ++k) {
    AnnModel m = AnnModel::zeros(2, 2);
    m.w1 << 0.5 * (k + 1), -0.25, 0.125, 1.0 / (k + 3);
    m.b1 << 0.1, -0.2 * k;
    m.w2 << 1.5, -0.75;
    m.b2 = 0.01 * k;
    out[names[k]] = export_weights(m, prefixes[k]);
  }
  return out;
}

}  // namespace

TEST(ExportWeights, FileSizesAndOrder) {
  AnnModel m = AnnModel::zeros(1, 1);
  m.w1(0, 0) = 2;
  auto b = export_weights(m);
  EXPECT_EQ(count_tokens(b.w1), 1u);
  EXPECT_EQ(count_tokens(b.w2), 1u);
  EXPECT_EQ(count_tokens(b.b1), 1u);
  EXPECT_EQ(count_tokens(b.b2), 1u);

  AnnModel big = AnnModel::zeros(16, 4);
  for (Eigen::Index j = 0; j < 4; ++j) {
    for (Eigen::Index i = 0; i < 16; ++i) big.w1(j, i) = double(100 * j + i);
  }
  b = export_weights(big, "gm_");
  EXPECT_EQ(b.file_name("w1"), "gm_w1.txt");
  std::istringstream in(b.w1);
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 16; ++i) {
      double v;
      in >> v;
      ASSERT_EQ(v, 100 * j + i);
    }
  }
}

TEST(ExportWeights, RejectsLogsig) {
  EXPECT_THROW(export_weights(AnnModel::zeros(2, 2, Activation::logsig)), Error);
}

TEST(ExportWeights, RoundTripRandomModels) {
  Rng r(31);
  for (int t = 0; t < 20; ++t) {
    const AnnModel m = random_ann(r, 1 + r.index(16), 1 + r.index(8));
    const WeightBundle b = export_weights(m);
    const AnnModel back = import_weights(b);
    for (int k = 0; k < 200; ++k) {
      std::vector<double> x(m.input_dim());
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = r.uniform(0, 2e-5);
      const double y = predict(m, x);
      ASSERT_NEAR(predict(back, x), y, 1e-9 * std::max(1.0, std::abs(y)));
      ASSERT_NEAR(vams_reference(b, x), y, 1e-9 * std::max(1.0, std::abs(y)));
    }
  }
}

TEST(ImportWeights, CountMismatchNamesFile) {
  AnnModel m = AnnModel::zeros(3, 2);
  WeightBundle b = export_weights(m, "gm_");
  b.w1 = "1 2 3 4 5\n";
  try {
    import_weights(b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::count_mismatch);
    EXPECT_NE(std::string(e.what()).find("gm_w1.txt"), std::string::npos);
  }
  b = export_weights(m);
  b.b1 = "0.5 abc\n";
  try {
    import_weights(b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::parse_error);
  }
  b = export_weights(m);
  b.w2 += "   \n\t\n";
  EXPECT_NO_THROW(import_weights(b));
}

TEST(WeightFiles, WriteReadRoundTrip) {
  Rng r(5);
  const AnnModel m = random_ann(r, 4, 3);
  const WeightBundle b = export_weights(m, "ip_");
  const auto dir = test::scratch_dir();
  const auto paths = write_weight_bundle(b, dir);
  ASSERT_EQ(paths.size(), 4u);
  EXPECT_EQ(paths[0].filename(), "ip_w1.txt");
  const WeightBundle c = read_weight_bundle(dir, "ip_", 3, 4);
  EXPECT_EQ(c.w1, b.w1);
  EXPECT_EQ(c.b2, b.b2);
  EXPECT_THROW(read_weight_bundle(dir, "zz_", 3, 4), Error);
}

TEST(EmitVams, StructuralTokensInOrder) {
  const std::string text = emit_vams_module(small_spec(), small_bundles());
  std::size_t pos = 0;
  for (const char* tok : {"function real nn_metamodel", "$fopen", "tanh(u + b)", "endfunction", "initial", "analog",
                          "laplace_nd", "endmodule"}) {
    const auto at = text.find(tok, pos);
    ASSERT_NE(at, std::string::npos) << tok;
    pos = at;
  }
  EXPECT_EQ(text.find("initial"), text.find("initial begin"));
  EXPECT_LT(text.find("function real"), text.find("initial"));
  EXPECT_LT(text.find("function real"), text.find("analog"));
  for (const char* f : {"gm_w1.txt", "ip_w1.txt", "in_b2.txt"}) EXPECT_NE(text.find(f), std::string::npos) << f;
  EXPECT_EQ(text.find("scal"), std::string::npos);
  EXPECT_NE(text.find("parameter real w1"), std::string::npos);
}

TEST(EmitVams, Deterministic) {
  EXPECT_EQ(emit_vams_module(small_spec(), small_bundles()), emit_vams_module(small_spec(), small_bundles()));
}

TEST(EmitVams, MatchesGoldenFile) {
  const std::string text = emit_vams_module(small_spec(), small_bundles());
  const auto golden = test::data_path("golden_opamp_meta.vams");
  if (std::getenv("IVAMS_UPDATE_GOLDEN")) {
    std::ofstream(golden, std::ios::binary) << text;
  }
  std::ifstream in(golden, std::ios::binary);
  ASSERT_TRUE(in) << "missing " << golden;
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(text, ss.str());
}

TEST(EmitVams, Errors) {
  auto bundles = small_bundles();
  bundles.erase("i_n");
  EXPECT_THROW(emit_vams_module(small_spec(), bundles), Error);
  auto spec = small_spec();
  spec.module_name = "module";
  EXPECT_THROW(emit_vams_module(spec, small_bundles()), Error);
  spec = small_spec();
  spec.design_variables.push_back({"extra", 0, 1});
  EXPECT_THROW(emit_vams_module(spec, small_bundles()), Error);
  spec = small_spec();
  spec.denominator = {0.0, 1.0};
  EXPECT_THROW(emit_vams_module(spec, small_bundles()), Error);
}
