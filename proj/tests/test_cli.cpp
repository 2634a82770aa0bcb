#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const char* kCli = WESR_CLI_PATH;

fs::path tmp_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "wesr_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path write_file(const std::string& name, const std::string& content) {
    fs::path p = tmp_dir() / name;
    std::ofstream(p) << content;
    return p;
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    fs::path out_path = tmp_dir() / "out.txt";
    std::string cmd = std::string(kCli) + " " + args + " > " +
                      out_path.string() + " 2> " +
                      (tmp_dir() / "err.txt").string();
    int rc = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    int code = WEXITSTATUS(rc);
    return {code, ss.str()};
}

std::string read_err() {
    std::ifstream in(tmp_dir() / "err.txt");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("score: identity gives exit 0 and perfect report") {
    auto ref = write_file("ref.jsonl",
        R"({"id":"u1","text":"<whispering> hello </whispering> [laughs]","language":"en"})" "\n"
        R"({"id":"u2","text":"[cough] ok","language":"en"})" "\n");
    auto hyp = write_file("hyp.jsonl",
        R"({"id":"u1","text":"<whispering> hello </whispering> [laughs]"})" "\n"
        R"({"id":"u2","text":"[cough] ok"})" "\n");
    auto r = run("score --ref " + ref.string() + " --hyp " + hyp.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("100.0") != std::string::npos);
    CHECK(r.out.find("| Tag |") != std::string::npos);  // markdown default
}

TEST_CASE("score: json output parses and is stable") {
    auto ref = write_file("ref.jsonl",
        R"({"id":"u1","text":"[cough] ok","language":"en"})" "\n");
    auto hyp = write_file("hyp.jsonl", R"({"id":"u1","text":"ok [cough]"})" "\n");
    auto a = run("score --format json --ref " + ref.string() + " --hyp " + hyp.string());
    auto b = run("score --format json --ref " + ref.string() + " --hyp " + hyp.string());
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"micro\"") != std::string::npos);
}

TEST_CASE("score: aggregate and kinds sections appear on request") {
    auto ref = write_file("ref.jsonl",
        R"({"id":"u1","text":"<crying> a b </crying> [cough]","language":"en"})" "\n");
    auto hyp = write_file("hyp.jsonl",
        R"({"id":"u1","text":"<crying> a b </crying> [cough]"})" "\n");
    auto r = run("score --aggregate --kinds --ref " + ref.string() +
                 " --hyp " + hyp.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("CRYING") != std::string::npos);
    CHECK(r.out.find("ontinuous") != std::string::npos);
}

TEST_CASE("exit 2 on missing file and malformed hypothesis line") {
    auto ref = write_file("ref.jsonl", R"({"id":"u1","text":"ok"})" "\n");
    auto r = run("score --ref /nonexistent.jsonl --hyp " + ref.string());
    CHECK(r.exit_code == 2);
    auto bad_hyp = write_file("bad_hyp.jsonl", "{not json\n");
    auto r2 = run("score --ref " + ref.string() + " --hyp " + bad_hyp.string());
    CHECK(r2.exit_code == 2);
    CHECK(read_err().find("1") != std::string::npos);  // line number surfaced
}

TEST_CASE("strict scoring of malformed hypothesis exits 1") {
    auto ref = write_file("ref.jsonl", R"({"id":"u1","text":"ok"})" "\n");
    auto hyp = write_file("hyp.jsonl", R"({"id":"u1","text":"[sneeze] ok"})" "\n");
    auto r = run("score --strict --ref " + ref.string() + " --hyp " + hyp.string());
    CHECK(r.exit_code == 1);
    CHECK(read_err().find("u1") != std::string::npos);
    auto lenient = run("score --ref " + ref.string() + " --hyp " + hyp.string());
    CHECK(lenient.exit_code == 0);
}

TEST_CASE("validate") {
    auto good = write_file("good.jsonl", R"({"id":"u1","text":"[cough] ok"})" "\n");
    auto r = run("validate --ref " + good.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("0 diagnostics") != std::string::npos);
    auto bad = write_file("bad.jsonl",
        R"({"id":"u1","text":"<crying> oh </shouting>"})" "\n");
    auto r2 = run("validate --ref " + bad.string());
    CHECK(r2.exit_code == 1);
    CHECK(read_err().find("u1") != std::string::npos);
}

TEST_CASE("wer: tag-only differences score zero") {
    auto ref = write_file("ref.jsonl",
        R"({"id":"u1","text":"[cough] the cat sat","language":"en"})" "\n");
    auto hyp = write_file("hyp.jsonl",
        R"({"id":"u1","text":"the <whispering> cat </whispering> sat"})" "\n");
    auto r = run("wer --format json --ref " + ref.string() + " --hyp " + hyp.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"corpus_wer\": 0.0") != std::string::npos);
}

TEST_CASE("wer: substitution case gives 33.3") {
    auto ref = write_file("ref.jsonl",
        R"({"id":"u1","text":"the cat sat","language":"en"})" "\n");
    auto hyp = write_file("hyp.jsonl", R"({"id":"u1","text":"the cat sit"})" "\n");
    auto r = run("wer --ref " + ref.string() + " --hyp " + hyp.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("33.3") != std::string::npos);
}

TEST_CASE("stats on the bench fixture reproduces the composition") {
    std::string fixture = WESR_DATA_DIR "/wesr_bench_stats_fixture.jsonl";
    auto r = run("stats --format json --ref " + fixture);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("927") != std::string::npos);
    CHECK(r.out.find("657") != std::string::npos);
    CHECK(r.out.find("1918") != std::string::npos);
}

TEST_CASE("align --debug prints a replace trace") {
    auto ref = write_file("ref.jsonl",
        R"({"id":"u1","text":"a b c d","language":"en"})" "\n");
    auto hyp = write_file("hyp.jsonl",
        R"({"id":"u1","text":"a x [cough] y d"})" "\n");
    auto r = run("align --debug --ref " + ref.string() + " --hyp " + hyp.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("Replace") != std::string::npos);
    CHECK(r.out.find("cough") != std::string::npos);
}

TEST_CASE("normalize: mapped record on stdout, exclusion on stderr") {
    auto ext = write_file("ext.jsonl",
        R"({"id":"r1","text":"[laugh] oh","language":"en"})" "\n"
        R"({"id":"r2","text":"[tsk] fine","language":"en"})" "\n");
    auto r = run("normalize --from synparaspeech --ref " + ext.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("[laughs] oh") != std::string::npos);
    CHECK(r.out.find("r2") == std::string::npos);
    std::string err = read_err();
    CHECK(err.find("r2") != std::string::npos);
    CHECK(err.find("tsk") != std::string::npos);
}

TEST_CASE("normalize: --mapping override changes the target") {
    auto ext = write_file("ext.jsonl",
        R"({"id":"r1","text":"[laugh] oh","language":"en"})" "\n");
    auto ovr = write_file("ovr.kv", "synparaspeech/laugh = giggle\n");
    auto r = run("normalize --from synparaspeech --mapping " + ovr.string() +
                 " --ref " + ext.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("[giggle] oh") != std::string::npos);
}

TEST_CASE("perturb: deterministic under --seed and parses back") {
    auto ref = write_file("ref.jsonl",
        R"({"id":"u1","text":"<crying> one two three </crying> [cough] four","language":"en"})" "\n"
        R"({"id":"u2","text":"[laughs] five six","language":"en"})" "\n");
    std::string args = "perturb --seed 42 --sub-rate 0.3 --del-rate 0.2 "
                       "--ins-rate 0.2 --ref " + ref.string();
    auto a = run(args);
    auto b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    auto c = run("perturb --seed 43 --sub-rate 0.3 --del-rate 0.2 "
                 "--ins-rate 0.2 --ref " + ref.string());
    CHECK(c.out != a.out);
}
