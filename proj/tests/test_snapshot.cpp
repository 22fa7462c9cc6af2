#include <gtest/gtest.h>

#include <fstream>

#include "pcflow/snapshot.hpp"
#include "support.hpp"

using namespace pcflow;
using namespace pcflow::test;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "pcflow_test_snapshot";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Snapshot, TorusBinaryRoundTrip) {
  const ScalarField f = random_torus(3, 8, 2, 1, 4.5);
  const auto path = scratch("torus.bin");
  write_torus_binary(path, f, 0.125);
  double t = 0.0;
  const ScalarField back = read_torus_binary(path, &t);
  EXPECT_EQ(t, 0.125);
  EXPECT_EQ(back.grid, f.grid);
  EXPECT_EQ(back.samples, f.samples);
  EXPECT_EQ(std::filesystem::file_size(path), 2 * 8 + 3 * 8 + 8 + f.samples.size() * 8);
}

TEST(Snapshot, MalformedHeaderRejected) {
  const auto path = scratch("bad.bin");
  std::ofstream(path, std::ios::binary) << "garbage";
  EXPECT_THROW(read_torus_binary(path), std::runtime_error);
}

TEST(Snapshot, SphereBinaryLayout) {
  const SphereGrid g = SphereGrid::make(8, 2.0);
  const SphereField f = sh_synthesize(random_sphere_spectrum(g, 4, 1));
  const auto path = scratch("sphere.bin");
  write_sphere_binary(path, f, 0.5);
  std::ifstream is(path, std::ios::binary);
  char magic[8];
  is.read(magic, 8);
  EXPECT_EQ(std::string(magic, 8), "PCSPHERE");
  std::uint64_t nlat = 0, nlon = 0;
  double radius = 0.0, t = 0.0;
  is.read(reinterpret_cast<char*>(&nlat), 8);
  is.read(reinterpret_cast<char*>(&nlon), 8);
  is.read(reinterpret_cast<char*>(&radius), 8);
  is.read(reinterpret_cast<char*>(&t), 8);
  EXPECT_EQ(nlat, 9u);
  EXPECT_EQ(nlon, 18u);
  EXPECT_EQ(radius, 2.0);
  EXPECT_EQ(t, 0.5);
  EXPECT_EQ(std::filesystem::file_size(path), 8 + 32 + nlat * 8 + f.samples.size() * 8);
}

TEST(Snapshot, CsvHeaders) {
  const auto path = scratch("torus.csv");
  write_torus_csv(path, random_torus(2, 8, 2, 1));
  std::ifstream is(path);
  std::string header;
  std::getline(is, header);
  EXPECT_EQ(header, "x0,x1,value");
  std::size_t lines = 0;
  for (std::string l; std::getline(is, l);) ++lines;
  EXPECT_EQ(lines, 64u);
}
