// Copyright 2026 The biomine Authors.
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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "biomine/corpus_xml.hpp"
#include "support/fixtures.hpp"

namespace biomine {
namespace {

struct CliRun {
  int status = -1;
  std::string out;
};

// Runs the CLI through the shell; stderr goes to `dir/stderr.txt`.
CliRun run_cli(const std::string& arguments, const std::filesystem::path& dir) {
  const std::string command = std::string(BIOMINE_CLI_PATH) + " " + arguments + " 2>" +
                              (dir / "stderr.txt").string();
  CliRun run;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return run;
  char buffer[4096];
  std::size_t n = 0;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) run.out.append(buffer, n);
  const int raw = pclose(pipe);
  run.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return run;
}

std::string extract_arguments(const testing::EndToEndFixture& fixture) {
  std::string args = "extract --languages ";
  for (std::size_t i = 0; i < fixture.languages.size(); ++i) {
    args += (i ? "," : "") + fixture.languages[i];
  }
  for (const auto& [language, path] : fixture.config.dumps) {
    args += " --dump " + language + "=" + path.string();
  }
  args += " --titles " + fixture.config.titles_path->string();
  args += " --dim 512 --workers 2 -o " + fixture.config.output_dir.string();
  return args;
}

class CliTest : public ::testing::Test {
 protected:
  testing::TempDir dir_;
};

TEST_F(CliTest, ExtractWritesCorpusAndValidates) {
  const auto fixture = testing::make_end_to_end_fixture(dir_.path(), {"en", "es", "ca"});
  const CliRun extract = run_cli(extract_arguments(fixture), dir_.path());
  ASSERT_EQ(extract.status, 0) << testing::read_file(dir_ / "stderr.txt");
  EXPECT_NE(extract.out.find("Documents"), std::string::npos);

  const auto out = fixture.config.output_dir;
  for (const auto& language : fixture.languages) {
    EXPECT_TRUE(std::filesystem::exists(out / ("corpus." + language + ".xml")));
  }
  EXPECT_TRUE(std::filesystem::exists(out / "stats.txt"));
  EXPECT_EQ(testing::read_file(out / "stats.txt"), extract.out);

  const std::string files = (out / "corpus.en.xml").string() + " " +
                            (out / "corpus.es.xml").string() + " " +
                            (out / "corpus.ca.xml").string();
  const CliRun validate = run_cli("validate " + files, dir_.path());
  EXPECT_EQ(validate.status, 0) << testing::read_file(dir_ / "stderr.txt");
  EXPECT_NE(validate.out.find("ok: 3 file(s)"), std::string::npos);

  const CliRun stats = run_cli("stats " + files, dir_.path());
  EXPECT_EQ(stats.status, 0);
  EXPECT_EQ(stats.out, extract.out);
}

TEST_F(CliTest, ConfigFileSuppliesOptions) {
  const auto fixture = testing::make_end_to_end_fixture(dir_.path(), {"en", "es"});
  std::string ini = "[extract]\nlanguages = [\"en\", \"es\"]\n";
  ini += "dump = [\"en=" + fixture.config.dumps.at("en").string() + "\", \"es=" +
         fixture.config.dumps.at("es").string() + "\"]\n";
  ini += "titles = \"" + fixture.config.titles_path->string() + "\"\n";
  ini += "dim = 512\n";
  ini += "output = \"" + (dir_ / "from_config").string() + "\"\n";
  testing::write_file(dir_ / "run.toml", ini);
  const CliRun run = run_cli("--config " + (dir_ / "run.toml").string() + " extract", dir_.path());
  ASSERT_EQ(run.status, 0) << testing::read_file(dir_ / "stderr.txt");
  EXPECT_TRUE(std::filesystem::exists(dir_ / "from_config" / "corpus.es.xml"));
}

TEST_F(CliTest, ValidationErrorsExitWithOne) {
  const auto fixture = testing::make_end_to_end_fixture(dir_.path(), {"en", "es"});
  EXPECT_EQ(run_cli("", dir_.path()).status, 1);
  EXPECT_EQ(run_cli("extract --languages en,es", dir_.path()).status, 1);
  EXPECT_EQ(run_cli(extract_arguments(fixture) + " --threshold -3", dir_.path()).status, 1);
  EXPECT_EQ(run_cli(extract_arguments(fixture) + " --balance sometimes", dir_.path()).status, 1);
  EXPECT_EQ(run_cli(extract_arguments(fixture) + " --k 0", dir_.path()).status, 1);
}

TEST_F(CliTest, RuntimeErrorsExitWithTwo) {
  auto fixture = testing::make_end_to_end_fixture(dir_.path(), {"en", "es"});
  testing::write_file(fixture.config.dumps.at("es"), "<mediawiki><page><title>Trunc");
  const CliRun run = run_cli(extract_arguments(fixture), dir_.path());
  EXPECT_EQ(run.status, 2);
  const std::string err = testing::read_file(dir_ / "stderr.txt");
  EXPECT_NE(err.find("ingest"), std::string::npos) << err;
  EXPECT_FALSE(std::filesystem::exists(fixture.config.output_dir / "corpus.en.xml"));

  EXPECT_EQ(run_cli("stats /nonexistent/corpus.xml", dir_.path()).status, 2);
}

TEST_F(CliTest, ValidateReportsBrokenFiles) {
  DocumentRecord doc;
  doc.docid = "A";
  doc.wpid = 1;
  doc.language = "en";
  doc.gender = GenderLabel::kFemale;
  doc.title = "A";
  doc.segments = {{1, "One."}, {2, "Two."}};
  testing::write_file(dir_ / "en.xml", corpus_xml_string({doc}, "en"));
  doc.language = "es";
  doc.segments.pop_back();
  testing::write_file(dir_ / "es.xml", corpus_xml_string({doc}, "es"));
  testing::write_file(dir_ / "bad.xml", "<corpus><doc docid=\"A\"></corpus>");

  EXPECT_EQ(run_cli("validate " + (dir_ / "en.xml").string(), dir_.path()).status, 0);
  EXPECT_EQ(run_cli("validate " + (dir_ / "en.xml").string() + " " + (dir_ / "es.xml").string(),
                    dir_.path())
                .status,
            1);
  EXPECT_NE(testing::read_file(dir_ / "stderr.txt").find("segment counts differ"),
            std::string::npos);
  EXPECT_EQ(run_cli("validate " + (dir_ / "bad.xml").string(), dir_.path()).status, 1);
}

}  // namespace
}  // namespace biomine
