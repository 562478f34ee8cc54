#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <filesystem>
#include <limits>

#include "bcdi/config.hpp"
#include "bcdi/container.hpp"
#include "bcdi/csv.hpp"
#include "bcdi/error.hpp"
#include "bcdi/io.hpp"

namespace {

using namespace bcdi;
namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("bcdi-unit-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

TEST(Container, RealVolumeRoundTripIsBitExact) {
    RealVolume v(2, 3, 4);
    v[0] = -0.0;
    v[1] = std::numeric_limits<double>::denorm_min();
    v[2] = std::numeric_limits<double>::max();
    v[3] = 1.0 / 3.0;
    const RealVolume back = to_real_volume(decode(encode(to_container(v))));
    ASSERT_EQ(back.shape(), v.shape());
    for (std::size_t i = 0; i < v.size(); ++i) {
        EXPECT_EQ(std::bit_cast<std::uint64_t>(back[i]), std::bit_cast<std::uint64_t>(v[i]));
    }
}

TEST(Container, ComplexVolumeRoundTrip) {
    ComplexVolume v(3, 2, 2);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = complex(static_cast<double>(i), -0.5 * static_cast<double>(i));
    }
    const ArrayContainer c = to_container(v);
    EXPECT_EQ(c.dtype, DType::Complex128);
    EXPECT_EQ(c.element_count(), 12u);
    EXPECT_EQ(to_complex_volume(decode(encode(c))), v);
}

TEST(Container, HeaderLayout) {
    const std::string bytes = encode(to_container(RealImage(2, 3, 1.5)));
    ASSERT_EQ(bytes.size(), 4u + 4 + 4 + 4 + 2 * 8 + 6 * 8);
    EXPECT_EQ(bytes.substr(0, 4), "BCD1");
    EXPECT_EQ(static_cast<unsigned char>(bytes[4]), kContainerVersion);
    EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 1u);
    EXPECT_EQ(static_cast<unsigned char>(bytes[12]), 2u);
    EXPECT_EQ(static_cast<unsigned char>(bytes[16]), 2u);
    EXPECT_EQ(static_cast<unsigned char>(bytes[24]), 3u);
    const RealVolume v = to_real_volume(decode(bytes));
    EXPECT_EQ(v.shape(), (Shape3{{2, 3, 1}}));
}

TEST(Container, CorruptInputIsRejected) {
    const std::string good = encode(to_container(RealVolume(2, 2, 2, 1.0)));
    std::string bad_magic = good;
    bad_magic[0] = 'X';
    EXPECT_THROW(decode(bad_magic), IoError);
    EXPECT_THROW(decode(good.substr(0, good.size() - 1)), IoError);
    EXPECT_THROW(decode(good + "x"), IoError);
    EXPECT_THROW(decode(""), IoError);
    std::string bad_version = good;
    bad_version[4] = 9;
    EXPECT_THROW(decode(bad_version), IoError);
    std::string bad_dtype = good;
    bad_dtype[8] = 7;
    EXPECT_THROW(decode(bad_dtype), IoError);

    RealVolume nan(1, 1, 2, 0.0);
    nan[1] = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(decode(encode(to_container(nan))), IoError);
}

TEST(Container, WrongKindConversionThrows) {
    const ArrayContainer c = to_container(ComplexVolume(2, 2, 2));
    EXPECT_THROW(to_real_volume(c), Error);
}

TEST(Container, FileRoundTrip) {
    const fs::path dir = scratch_dir("container");
    const RealVolume v(3, 3, 3, 2.0);
    write_container(dir / "nested" / "v.bcd", to_container(v));
    EXPECT_EQ(to_real_volume(read_container(dir / "nested" / "v.bcd")), v);
    EXPECT_THROW(read_container(dir / "missing.bcd"), IoError);
}

TEST(Io, Fnv1aReferenceVectors) {
    EXPECT_EQ(io::fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(io::fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
    EXPECT_EQ(io::hash_hex(""), "cbf29ce484222325");
    EXPECT_EQ(io::hash_hex("foobar"), "85944171f73967e8");
}

TEST(Io, AtomicWriteReplacesAndLeavesNoTemporaries) {
    const fs::path dir = scratch_dir("atomic");
    io::write_file_atomic(dir / "a" / "f.txt", "first");
    io::write_file_atomic(dir / "a" / "f.txt", "second");
    EXPECT_EQ(io::read_file(dir / "a" / "f.txt"), "second");
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir / "a")) {
        ++files;
    }
    EXPECT_EQ(files, 1u);
}

TEST(Csv, NumbersRoundTrip) {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 1.975}) {
        EXPECT_EQ(std::stod(csv::format_number(v)), v);
    }
    EXPECT_EQ(csv::format_number(1.0), "1");
    EXPECT_EQ(csv::format_number(std::uint64_t{4371}), "4371");
}

TEST(Csv, DesignTableLayout) {
    DesignTableRequest req;
    req.pbfs = {6};
    req.min_positions = 12;
    req.max_positions = 13;
    const std::string text = csv::design_table(design_tables(req));
    EXPECT_EQ(text,
              "pbf,positions,M,f,below_threshold,saturated\n"
              "6,12,4371," + csv::format_number(std::sqrt(4371.0) / 20.0) + ",false,false\n"
              "6,13,4371," + csv::format_number(std::sqrt(4371.0) / 20.0) + ",false,true\n");
}

TEST(Csv, ErrorHistoryLayout) {
    const std::string text = csv::error_history({{1, Algorithm::SF, 0.5}, {2, Algorithm::HIO, 0.25}});
    EXPECT_EQ(text, "iteration,stage,error\n1,SF,0.5\n2,HIO,0.25\n");
}

TEST(Config, EmptyDocumentGivesDefaults) {
    const ExperimentConfig c = parse_config("{}");
    EXPECT_EQ(c.geometry.pbf, 6u);
    EXPECT_EQ(c.geometry.positions, 13u);
    EXPECT_EQ(c.recovery.alpha, 2e-4);
    EXPECT_EQ(c.crystal.array_dims, (std::array<std::size_t, 3>{128, 128, 70}));
    EXPECT_EQ(c.recipe.stages.size(), 4u);
    EXPECT_EQ(c.seed, 1u);
    EXPECT_EQ(to_json(c), to_json(ExperimentConfig{}));
}

TEST(Config, CanonicalJsonRoundTrips) {
    ExperimentConfig c;
    c.geometry.pbf = 4;
    c.geometry.scheme = OffsetScheme::Custom;
    c.geometry.offsets = {{0, 0}, {1, 2}};
    c.crystal.phase.model = PhaseModel::GaussianBump;
    c.recovery.negative_handling = NegativeHandling::Keep;
    c.recipe.stages = {{Algorithm::HIO, 10, 0.7}};
    c.output_dir = "elsewhere";
    c.seed = 42;
    const std::string text = to_json(c);
    EXPECT_EQ(to_json(parse_config(text)), text);
}

TEST(Config, PartialDocumentsOverrideOnlyTheirKeys) {
    const ExperimentConfig c = parse_config(R"({"geometry": {"pbf": 3, "positions": 5}, "seed": 9})");
    EXPECT_EQ(c.geometry.pbf, 3u);
    EXPECT_EQ(c.geometry.positions, 5u);
    EXPECT_EQ(c.geometry.roi_fine, 120u);
    EXPECT_EQ(c.seed, 9u);
    const DetectorGeometry g = c.geometry.resolve();
    EXPECT_EQ(g.offsets, diagonal_positions(3, 5));
}

TEST(Config, RejectsUnknownKeysBadTypesAndBadValues) {
    EXPECT_THROW(parse_config(R"({"bogus": 1})"), InvalidInput);
    EXPECT_THROW(parse_config(R"({"geometry": {"pfb": 3}})"), InvalidInput);
    EXPECT_THROW(parse_config(R"({"geometry": {"pbf": "six"}})"), InvalidInput);
    EXPECT_THROW(parse_config(R"({"recovery": {"alpha": -1}})"), InvalidInput);
    EXPECT_THROW(parse_config(R"({"crystal": {"phase": {"model": "spiral"}}})"), InvalidInput);
    EXPECT_THROW(parse_config("not json"), InvalidInput);
    EXPECT_THROW(parse_config("[1, 2]"), InvalidInput);
    EXPECT_THROW(load_config("/nonexistent/config.json"), InvalidInput);
}

} // namespace
