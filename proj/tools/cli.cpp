#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "hadrow/error.hpp"
#include "hadrow/formats.hpp"
#include "hadrow/hadcore.hpp"
#include "hadrow/ordering.hpp"
#include "hadrow/spi.hpp"

namespace hadrow::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr const char* kMaxOrderEnv = "HADROW_MAX_N";

// HADROW_MAX_N may lower a cap, never raise it.
unsigned order_cap(unsigned built_in) {
    const char* raw = std::getenv(kMaxOrderEnv);
    if (raw == nullptr || *raw == '\0') return built_in;
    unsigned value = 0;
    const std::string_view text(raw);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value < 1) {
        throw UsageError(std::string(kMaxOrderEnv) + "='" + raw + "' is not a positive integer");
    }
    return std::min(value, built_in);
}

void require_order_flag(unsigned order, unsigned cap) {
    if (order < 1 || order > cap) {
        throw UsageError("--n " + std::to_string(order) + " is out of range: valid range is [1, " +
                         std::to_string(cap) + "]");
    }
}

OrderingScheme ordering_flag(const std::string& token) {
    const auto scheme = parse_ordering(token);
    if (!scheme) {
        throw UsageError("--ordering '" + token + "' must be natural, sequency or dyadic");
    }
    return *scheme;
}

// Data sink that is either the caller's stream ("-") or a file.
class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : path_(path) {
        if (path == "-") {
            stream_ = &fallback;
            return;
        }
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
        if (!*file_) throw IoError("cannot open '" + path + "' for writing");
        stream_ = file_.get();
    }

    std::ostream& stream() { return *stream_; }

    void close() {
        stream_->flush();
        if (!*stream_) throw IoError("failed writing '" + path_ + "'");
        if (file_) file_->close();
    }

private:
    std::string path_;
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return in;
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads, static striping.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
    jobs = static_cast<unsigned>(std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1)));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += jobs) fn(i);
        });
    }
}

std::vector<std::uint64_t> index_flag(const std::string& text, unsigned order) {
    std::vector<std::uint64_t> indices;
    try {
        indices = parse_index_list(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--indices: ") + e.what());
    }
    if (indices.empty()) throw UsageError("--indices '" + text + "' selects no rows");
    const std::uint64_t limit = std::uint64_t{1} << order;
    if (indices.back() >= limit) {
        throw UsageError("--indices contains " + std::to_string(indices.back()) +
                         ", valid range is [0, " + std::to_string(limit) + ")");
    }
    return indices;
}

std::vector<std::uint64_t> all_indices(unsigned order) {
    std::vector<std::uint64_t> indices(std::size_t{1} << order);
    for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
    return indices;
}

// ---------------------------------------------------------------- row

struct RowOptions {
    std::uint64_t index = 0;
    unsigned order = 0;
    std::string ordering = "natural";
    std::string format = "csv";
    std::string out = "-";
    bool verbose = false;
};

int cmd_row(const RowOptions& opt, std::ostream& out, std::ostream& err) {
    require_order_flag(opt.order, order_cap(kMaxRowOrder));
    const std::uint64_t limit = std::uint64_t{1} << opt.order;
    if (opt.index >= limit) {
        throw UsageError("--index " + std::to_string(opt.index) +
                         " is out of range: valid range is [0, " + std::to_string(limit) + ")");
    }
    const OrderingScheme scheme = ordering_flag(opt.ordering);
    if (opt.format == "pbm" && opt.order % 2 != 0) {
        throw UsageError("--format pbm needs an even --n, got " + std::to_string(opt.order));
    }

    const std::uint64_t natural = to_natural(opt.index, opt.order, scheme);
    const GeneratedRow generated = generate_row(natural, opt.order);
    if (opt.verbose) {
        err << "row " << opt.index << " (" << to_string(scheme) << ") = natural row " << natural
            << ", multiplications " << generated.counter.multiplications << ", predicted "
            << predicted_cost(opt.order) << '\n';
    }

    Output sink(opt.out, out);
    if (opt.format == "packed") {
        const auto bytes = generated.row.bytes();
        sink.stream().write(reinterpret_cast<const char*>(bytes.data()),
                            static_cast<std::streamsize>(bytes.size()));
    } else {
        sink.stream() << export_row_text(generated.row,
                                         opt.format == "pbm" ? TextFormat::pbm : TextFormat::csv);
    }
    sink.close();
    return kSuccess;
}

// ---------------------------------------------------------------- batch

struct BatchOptions {
    std::string indices;
    unsigned order = 0;
    std::string ordering = "natural";
    std::string out = "-";
    unsigned jobs = 1;
};

int cmd_batch(const BatchOptions& opt, std::ostream& out, std::ostream&) {
    require_order_flag(opt.order, order_cap(kMaxRowOrder));
    if (opt.jobs < 1) throw UsageError("--jobs must be at least 1");
    const OrderingScheme scheme = ordering_flag(opt.ordering);
    const auto indices = index_flag(opt.indices, opt.order);

    Output sink(opt.out, out);
    PatternWriter writer(sink.stream(), opt.order, scheme, indices);
    // Rows are produced in chunks in parallel and written in index order, so
    // the bytes never depend on --jobs.
    const std::size_t chunk = std::size_t{64} * opt.jobs;
    std::vector<SignVector> rows(std::min(chunk, indices.size()));
    for (std::size_t begin = 0; begin < indices.size(); begin += chunk) {
        const std::size_t n = std::min(chunk, indices.size() - begin);
        parallel_for(n, opt.jobs, [&](std::size_t i) {
            rows[i] = generate_ordered_row(indices[begin + i], opt.order, scheme);
        });
        for (std::size_t i = 0; i < n; ++i) writer.append(rows[i]);
    }
    writer.finish();
    sink.close();
    return kSuccess;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
    unsigned max_order = 10;
    unsigned jobs = 1;
};

struct SuiteResult {
    std::string suite;
    unsigned order = 0;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    std::string detail;
};

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
    const unsigned cap = order_cap(kMaxOracleOrder);
    if (opt.max_order < 1 || opt.max_order > cap) {
        throw UsageError("--n-max " + std::to_string(opt.max_order) +
                         " exceeds the oracle cap: valid range is [1, " + std::to_string(cap) +
                         "]");
    }
    const unsigned jobs = std::max(1U, opt.jobs);

    std::vector<SuiteResult> results;
    for (unsigned n = 1; n <= opt.max_order; ++n) {
        const std::size_t size = std::size_t{1} << n;
        const auto oracle = full_matrix(n);
        std::vector<GeneratedRow> rows(size);
        parallel_for(size, jobs, [&](std::size_t i) { rows[i] = generate_row(i, n); });

        SuiteResult equivalence{"oracle-equivalence", n, size, 0, "full_matrix + direct_row"};
        SuiteResult counter{"counter-law", n, size, 0, ""};
        const std::uint64_t predicted = predicted_cost(n);
        std::uint64_t last_count = 0;
        for (std::size_t i = 0; i < size; ++i) {
            if (rows[i].row != oracle[i] || direct_row(i, n) != oracle[i]) ++equivalence.failures;
            last_count = rows[i].counter.multiplications;
            if (last_count != predicted) ++counter.failures;
        }
        counter.detail = "C(" + std::to_string(n) + ") = " + std::to_string(predicted) +
                         ", measured " + std::to_string(last_count);

        SuiteResult orthogonality{"orthogonality", n, size * (size + 1) / 2, 0, "dot = 2^n delta"};
        std::vector<std::uint64_t> bad_pairs(size, 0);
        parallel_for(size, jobs, [&](std::size_t i) {
            for (std::size_t j = i; j < size; ++j) {
                const std::int64_t expected = i == j ? static_cast<std::int64_t>(size) : 0;
                if (dot(rows[i].row, rows[j].row) != expected) ++bad_pairs[i];
            }
        });
        for (const auto b : bad_pairs) orthogonality.failures += b;

        SuiteResult sequency{"sequency-law", n, size, 0, "sign_changes(k) = k"};
        for (std::size_t k = 0; k < size; ++k) {
            const auto& row = rows[to_natural(k, n, OrderingScheme::sequency)].row;
            if (sign_changes(row) != k) ++sequency.failures;
        }

        results.push_back(std::move(equivalence));
        results.push_back(std::move(counter));
        results.push_back(std::move(orthogonality));
        results.push_back(std::move(sequency));
    }

    std::uint64_t failed_suites = 0;
    out << std::left << std::setw(20) << "suite" << std::right << std::setw(4) << "n"
        << std::setw(12) << "cases" << std::setw(10) << "failures" << "  status  detail\n";
    for (const auto& r : results) {
        const bool pass = r.failures == 0;
        failed_suites += pass ? 0 : 1;
        out << std::left << std::setw(20) << r.suite << std::right << std::setw(4) << r.order
            << std::setw(12) << r.cases << std::setw(10) << r.failures << "  "
            << (pass ? "PASS  " : "FAIL  ") << "  " << r.detail << '\n';
    }
    if (failed_suites != 0) {
        err << failed_suites << " verification suite(s) failed\n";
        return kVerificationFailed;
    }
    err << "all " << results.size() << " verification suites passed\n";
    return kSuccess;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
    std::string image;
    std::string indices;
    std::string ordering = "natural";
    std::string out = "-";
    unsigned jobs = 1;
};

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream&) {
    const OrderingScheme scheme = ordering_flag(opt.ordering);
    auto in = open_input(opt.image);
    const Scene scene = read_pgm(in);
    const unsigned order = scene.order();
    if (order > order_cap(kMaxRowOrder)) {
        throw UsageError("image of 2^" + std::to_string(order) + " pixels exceeds the order cap");
    }
    const auto indices = opt.indices.empty() ? all_indices(order) : index_flag(opt.indices, order);

    const MeasurementSet m = simulate(scene, indices, scheme, std::max(1U, opt.jobs));
    Output sink(opt.out, out);
    for (const auto& e : m.entries) sink.stream() << e.index << ',' << e.value << '\n';
    sink.close();
    return kSuccess;
}

// ---------------------------------------------------------------- reconstruct

struct ReconstructOptions {
    std::string measurements;
    std::string ordering = "natural";
    std::size_t width = 0;
    std::size_t height = 0;
    unsigned order = 0;
    std::string pgm_format = "p5";
    std::string out = "-";
};

std::vector<Measurement> read_measurement_csv(std::istream& in, const std::string& path) {
    std::vector<Measurement> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        Measurement m;
        const auto bad = [&] {
            return IoError(path + ":" + std::to_string(line_no) + ": expected 'index,value', got '" +
                           line + "'");
        };
        if (comma == std::string::npos) throw bad();
        const char* begin = line.data();
        const char* mid = begin + comma;
        const char* end = begin + line.size();
        auto r1 = std::from_chars(begin, mid, m.index);
        auto r2 = std::from_chars(mid + 1, end, m.value);
        if (r1.ec != std::errc{} || r1.ptr != mid || r2.ec != std::errc{} || r2.ptr != end) {
            throw bad();
        }
        entries.push_back(m);
    }
    return entries;
}

int cmd_reconstruct(const ReconstructOptions& opt, std::ostream& out, std::ostream&) {
    const OrderingScheme scheme = ordering_flag(opt.ordering);
    if (opt.pgm_format != "p2" && opt.pgm_format != "p5") {
        throw UsageError("--pgm-format must be p2 or p5");
    }
    MeasurementSet m;
    m.scheme = scheme;
    std::size_t width = opt.width;
    std::size_t height = opt.height;
    if (width != 0 || height != 0) {
        const std::size_t pixels = width * height;
        if (width == 0 || height == 0 || !std::has_single_bit(width) ||
            !std::has_single_bit(height) || pixels < 2) {
            throw UsageError("--width/--height " + std::to_string(width) + "x" +
                             std::to_string(height) + " must be powers of two");
        }
        m.order = static_cast<unsigned>(std::countr_zero(pixels));
        if (opt.order != 0 && opt.order != m.order) {
            throw UsageError("--n disagrees with --width x --height");
        }
    } else if (opt.order != 0) {
        m.order = opt.order;
        width = opt.order % 2 == 0 ? std::size_t{1} << (opt.order / 2) : std::size_t{1} << opt.order;
        height = opt.order % 2 == 0 ? width : 1;
    } else {
        throw UsageError("reconstruct needs --width and --height (or --n)");
    }
    require_order_flag(m.order, order_cap(kMaxRowOrder));

    auto in = open_input(opt.measurements);
    m.entries = read_measurement_csv(in, opt.measurements);
    const Scene scene = reconstruct(m, width, height).to_scene();

    Output sink(opt.out, out);
    write_pgm(sink.stream(), scene, opt.pgm_format == "p2" ? PgmVariant::ascii : PgmVariant::binary);
    sink.close();
    return kSuccess;
}

// ---------------------------------------------------------------- bench

struct BenchOptions {
    unsigned min_order = 1;
    unsigned max_order = 20;
    unsigned repeats = 5;
    std::uint64_t seed = 1;
    std::string out = "-";
};

int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
    const unsigned cap = order_cap(kMaxRowOrder);
    if (opt.min_order < 1 || opt.max_order > cap || opt.min_order > opt.max_order) {
        throw UsageError("--n-min " + std::to_string(opt.min_order) + " --n-max " +
                         std::to_string(opt.max_order) + " is not a range within [1, " +
                         std::to_string(cap) + "]");
    }
    if (opt.repeats < 1) throw UsageError("--repeats must be at least 1");

    std::mt19937_64 rng(opt.seed);
    Output sink(opt.out, out);
    sink.stream() << "n,median_ns,multiplications,predicted_cost,peak_bytes\n";
    bool counts_match = true;
    for (unsigned n = opt.min_order; n <= opt.max_order; ++n) {
        std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << n) - 1);
        std::vector<std::int64_t> times;
        std::uint64_t multiplications = 0;
        std::size_t peak = 0;
        for (unsigned r = 0; r < opt.repeats; ++r) {
            const std::uint64_t index = pick(rng);
            const auto start = std::chrono::steady_clock::now();
            const GeneratedRow g = generate_row(index, n);
            const auto stop = std::chrono::steady_clock::now();
            times.push_back(
                std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
            if (r > 0 && g.counter.multiplications != multiplications) counts_match = false;
            multiplications = g.counter.multiplications;
            peak = std::max(peak, g.peak_working_bytes);
        }
        std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
        const std::uint64_t predicted = predicted_cost(n);
        counts_match = counts_match && multiplications == predicted;
        sink.stream() << n << ',' << times[times.size() / 2] << ',' << multiplications << ','
                      << predicted << ',' << peak << '\n';
    }
    sink.close();
    if (!counts_match) {
        err << "measured multiplication counts diverge from 2^(n+1) - 2\n";
        return kVerificationFailed;
    }
    return kSuccess;
}

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::bad_magic:
        case Errc::unsupported_version:
        case Errc::truncated_stream:
        case Errc::malformed_header:
        case Errc::parse_error:
            return kIoError;
        default:
            return kUsageError;
    }
}

}  // namespace

std::vector<std::uint64_t> parse_index_list(std::string_view text) {
    const auto parse_number = [](std::string_view token) {
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
            throw std::invalid_argument("'" + std::string(token) + "' is not an index");
        }
        return value;
    };

    std::vector<std::uint64_t> indices;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const auto item = text.substr(pos, comma - pos);
        const std::size_t dots = item.find("..");
        if (dots == std::string_view::npos) {
            indices.push_back(parse_number(item));
        } else {
            const auto lo = parse_number(item.substr(0, dots));
            const auto hi = parse_number(item.substr(dots + 2));
            if (hi < lo) throw std::invalid_argument("range '" + std::string(item) + "' is reversed");
            if (hi - lo > (std::uint64_t{1} << kMaxRowOrder)) {
                throw std::invalid_argument("range '" + std::string(item) + "' is too large");
            }
            for (std::uint64_t i = lo; i < hi; ++i) indices.push_back(i);
        }
        pos = comma + 1;
    }
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    return indices;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Row-wise Sylvester Hadamard generation, verification and SPI simulation",
                 "hadrow"};
    app.require_subcommand(1);

    RowOptions row;
    auto* row_cmd = app.add_subcommand("row", "Generate one Hadamard row");
    row_cmd->add_option("--index", row.index, "Ordered row index")->required();
    row_cmd->add_option("--n", row.order, "Order exponent (rows have 2^n entries)")->required();
    row_cmd->add_option("--ordering", row.ordering, "natural | sequency | dyadic");
    row_cmd->add_option("--format", row.format, "csv | pbm | packed")
        ->check(CLI::IsMember({"csv", "pbm", "packed"}));
    row_cmd->add_option("--out", row.out, "Output path, '-' for stdout");
    row_cmd->add_flag("--verbose", row.verbose, "Report the multiplication count");

    BatchOptions batch;
    auto* batch_cmd = app.add_subcommand("batch", "Write a HADP pattern file");
    batch_cmd->add_option("--indices", batch.indices, "Ranges a..b and/or comma lists")
        ->required();
    batch_cmd->add_option("--n", batch.order, "Order exponent")->required();
    batch_cmd->add_option("--ordering", batch.ordering, "natural | sequency | dyadic");
    batch_cmd->add_option("--out", batch.out, "Output path, '-' for stdout");
    batch_cmd->add_option("--jobs", batch.jobs, "Worker threads");

    VerifyOptions verify;
    auto* verify_cmd = app.add_subcommand("verify", "Run the oracle and property suites");
    verify_cmd->add_option("--n-max", verify.max_order, "Largest order exponent to check");
    verify_cmd->add_option("--jobs", verify.jobs, "Worker threads");

    SimulateOptions simulate_opt;
    auto* simulate_cmd = app.add_subcommand("simulate", "Measure a PGM scene with Hadamard rows");
    simulate_cmd->add_option("--image", simulate_opt.image, "Input P2/P5 graymap")->required();
    simulate_cmd->add_option("--indices", simulate_opt.indices, "Pattern indices (default: all)");
    simulate_cmd->add_option("--ordering", simulate_opt.ordering, "natural | sequency | dyadic");
    simulate_cmd->add_option("--out", simulate_opt.out, "Measurement CSV, '-' for stdout");
    simulate_cmd->add_option("--jobs", simulate_opt.jobs, "Worker threads");

    ReconstructOptions rec;
    auto* reconstruct_cmd =
        app.add_subcommand("reconstruct", "Rebuild a PGM scene from measurements");
    reconstruct_cmd->add_option("--measurements", rec.measurements, "CSV of index,value lines")
        ->required();
    reconstruct_cmd->add_option("--ordering", rec.ordering, "natural | sequency | dyadic");
    reconstruct_cmd->add_option("--width", rec.width, "Scene width");
    reconstruct_cmd->add_option("--height", rec.height, "Scene height");
    reconstruct_cmd->add_option("--n", rec.order, "Order exponent when no shape is given");
    reconstruct_cmd->add_option("--pgm-format", rec.pgm_format, "p2 | p5");
    reconstruct_cmd->add_option("--out", rec.out, "Output PGM, '-' for stdout");

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "Time row generation and check the cost law");
    bench_cmd->add_option("--n-min", bench.min_order, "Smallest order exponent");
    bench_cmd->add_option("--n-max", bench.max_order, "Largest order exponent");
    bench_cmd->add_option("--repeats", bench.repeats, "Timed calls per order");
    bench_cmd->add_option("--seed", bench.seed, "Seed for the random row indices");
    bench_cmd->add_option("--out", bench.out, "CSV path, '-' for stdout");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (*row_cmd) return cmd_row(row, out, err);
        if (*batch_cmd) return cmd_batch(batch, out, err);
        if (*verify_cmd) return cmd_verify(verify, out, err);
        if (*simulate_cmd) return cmd_simulate(simulate_opt, out, err);
        if (*reconstruct_cmd) return cmd_reconstruct(rec, out, err);
        if (*bench_cmd) return cmd_bench(bench, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const Error& e) {
        err << "error [" << errc_name(e.code()) << "]: " << e.what() << '\n';
        return exit_code_for(e.code());
    }
    return kUsageError;
}

}  // namespace hadrow::cli
