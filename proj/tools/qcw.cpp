// qcw: run declarative homological-algebra commands against a .qcw workspace.
//
//   qcw COMMAND FILE [ARGS...] [flags]
//   qcw parse FILE            round-trip the workspace through the serializer
//
// Flags: --window LO..HI  --budget N  --universe A,B  --cover u0,u1
//        --twists 1,2  --pair KIND  --triple NAME  --n K  --report PATH
// QCW_BUDGET sets the default budget. Exit: 0 success, 1 mathematical
// negative, 2 error. Reports go to stdout (and --report PATH); timing and
// diagnostics go to stderr so reports stay byte-stable.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qcoh/qcwlang.hpp"

namespace {

using qcoh::QcwError;

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

qcoh::ExpWindow parse_window(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos)
        throw QcwError(QcwError::Kind::Syntax, "<args>", 0, "--window expects LO..HI");
    try {
        long lo = std::stol(s.substr(0, dots));
        long hi = std::stol(s.substr(dots + 2));
        return {lo, hi};
    } catch (const std::exception&) {
        throw QcwError(QcwError::Kind::Syntax, "<args>", 0, "--window expects LO..HI");
    }
}

long parse_long(const std::string& flag, const std::string& s) {
    try {
        return std::stol(s);
    } catch (const std::exception&) {
        throw QcwError(QcwError::Kind::Syntax, "<args>", 0, flag + " expects an integer");
    }
}

int fail(const std::string& msg) {
    std::cerr << "qcw: " << msg << "\n";
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> words(argv + 1, argv + argc);
    if (words.size() < 2) {
        std::cerr << "usage: qcw COMMAND FILE [ARGS...] [flags]\n"
                  << "commands: parse validate qcheck hom ext lift factorize approx\n"
                  << "          pair-check triple-verify classify homotopic ho-hom\n"
                  << "          cech cohomology tensor pushout-product bundle-check\n";
        return 2;
    }

    std::string command = words[0];
    std::string path = words[1];

    qcoh::RunOptions opt;
    if (const char* b = std::getenv("QCW_BUDGET")) {
        try {
            opt.budget = static_cast<std::size_t>(std::stol(b));
        } catch (const std::exception&) {
            return fail("QCW_BUDGET is not an integer");
        }
    }

    std::vector<std::string> args;
    std::string report_path;
    try {
        for (std::size_t i = 2; i < words.size(); ++i) {
            const std::string& w = words[i];
            auto value = [&]() -> const std::string& {
                if (i + 1 >= words.size())
                    throw QcwError(QcwError::Kind::Syntax, "<args>", 0, w + " needs a value");
                return words[++i];
            };
            if (w == "--window")
                opt.window = parse_window(value());
            else if (w == "--budget")
                opt.budget = static_cast<std::size_t>(parse_long(w, value()));
            else if (w == "--universe")
                opt.universe = split_commas(value());
            else if (w == "--cover")
                opt.cover = split_commas(value());
            else if (w == "--twists") {
                for (const auto& t : split_commas(value())) opt.twists.push_back(parse_long(w, t));
            } else if (w == "--pair")
                opt.pair = value();
            else if (w == "--triple")
                opt.triple = value();
            else if (w == "--n")
                opt.ext_degree = parse_long(w, value());
            else if (w == "--report")
                report_path = value();
            else if (w.rfind("--", 0) == 0)
                throw QcwError(QcwError::Kind::Syntax, "<args>", 0, "unknown flag " + w);
            else
                args.push_back(w);
        }
    } catch (const QcwError& e) {
        return fail(e.what());
    }

    std::ifstream in(path);
    if (!in) return fail("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();

    qcoh::Workspace ws;
    try {
        ws = qcoh::parse_qcw(buf.str(), path);
    } catch (const QcwError& e) {
        return fail(e.what());
    } catch (const qcoh::Error& e) {
        return fail(e.what());
    }

    if (command == "parse") {
        std::cout << qcoh::serialize(ws);
        return 0;
    }

    auto start = std::chrono::steady_clock::now();
    qcoh::Report report = qcoh::run_command(command, args, ws, opt);
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    std::cerr << "qcw: " << command << " finished in " << elapsed.count() << " ms\n";

    std::string text = report.str();
    std::cout << text;
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) return fail("cannot write '" + report_path + "'");
        out << text;
    }
    return report.exit_code;
}
