#pragma once

// Command-line surface: `table` renders triangles/matrices, `eval` computes
// one entry by a chosen route, `verify` runs the identity suites, `dist`
// emits the exact Poisson-binomial distribution. Exit codes: 0 success,
// 1 verification failure, 2 usage error. Output is deterministic byte for
// byte, including seeded sampling.

#include <rcf/algebra.hpp>
#include <rcf/distribution.hpp>
#include <rcf/matrices.hpp>
#include <rcf/symfunc.hpp>
#include <rcf/triangles.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace rcf::cli {

using Json = nlohmann::ordered_json;

struct OutputRecord {
    long long n = 0;
    long long k = 0;
    std::string value;
    std::string route;
};

struct VerifyRow {
    std::string suite;
    std::string check;
    bool pass = true;
    std::string detail;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::map<std::string, std::string> parse_flags(std::span<const std::string> args) {
    std::map<std::string, std::string> flags;
    for (const std::string& arg : args) {
        if (arg.size() < 3 || arg.substr(0, 2) != "--")
            throw UsageError("expected --name=value, got '" + arg + "'");
        const std::size_t eq = arg.find('=');
        if (eq == std::string::npos || eq == 2) throw UsageError("expected --name=value, got '" + arg + "'");
        const std::string name = arg.substr(2, eq - 2);
        if (!flags.emplace(name, arg.substr(eq + 1)).second) throw UsageError("duplicate flag --" + name);
    }
    return flags;
}

class Flags {
public:
    explicit Flags(std::span<const std::string> args) : kv_(parse_flags(args)) {}

    std::optional<std::string> take(const std::string& name) {
        auto it = kv_.find(name);
        if (it == kv_.end()) return std::nullopt;
        std::string v = it->second;
        kv_.erase(it);
        return v;
    }

    std::string require(const std::string& name) {
        auto v = take(name);
        if (!v) throw UsageError("missing required flag --" + name);
        return *v;
    }

    void reject_unknown() const {
        if (!kv_.empty()) throw UsageError("unknown flag --" + kv_.begin()->first);
    }

private:
    std::map<std::string, std::string> kv_;
};

inline long long to_int(const std::string& text, const std::string& flag) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError("flag --" + flag + " expects an integer, got '" + text + "'");
    }
}

inline BigInt to_bigint(const std::string& text, const std::string& flag) {
    std::size_t i = text.size() > 0 && (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (i == text.size()) throw UsageError("flag --" + flag + " expects an integer, got '" + text + "'");
    for (; i < text.size(); ++i)
        if (text[i] < '0' || text[i] > '9')
            throw UsageError("flag --" + flag + " expects an integer, got '" + text + "'");
    return BigInt(text);
}

struct RRange {
    long long lo = 0;
    long long hi = 5;
};

inline RRange to_range(const std::string& text, const std::string& flag) {
    const std::size_t dots = text.find("..");
    RRange range;
    if (dots == std::string::npos) {
        range.lo = range.hi = to_int(text, flag);
    } else {
        range.lo = to_int(text.substr(0, dots), flag);
        range.hi = to_int(text.substr(dots + 2), flag);
    }
    if (range.lo > range.hi) throw UsageError("flag --" + flag + ": empty range '" + text + "'");
    return range;
}

enum class Format { plain, csv, json };

inline Format to_format(const std::optional<std::string>& text, Format fallback) {
    if (!text) return fallback;
    if (*text == "csv") return Format::csv;
    if (*text == "json") return Format::json;
    throw UsageError("flag --format expects csv or json, got '" + *text + "'");
}

inline void write_records(std::ostream& out, std::span<const OutputRecord> records, Format format,
                          bool with_route) {
    if (format == Format::json) {
        Json arr = Json::array();
        for (const OutputRecord& rec : records) {
            Json obj;
            obj["n"] = rec.n;
            obj["k"] = rec.k;
            obj["value"] = rec.value;
            if (with_route) obj["route"] = rec.route;
            arr.push_back(std::move(obj));
        }
        out << arr.dump(2) << "\n";
        return;
    }
    for (const OutputRecord& rec : records) {
        out << rec.n << "," << rec.k << "," << rec.value;
        if (with_route) out << "," << rec.route;
        out << "\n";
    }
}

inline void write_verify_report(std::ostream& out, std::span<const VerifyRow> rows, Format format) {
    if (format == Format::json) {
        Json arr = Json::array();
        for (const VerifyRow& row : rows) {
            Json obj;
            obj["suite"] = row.suite;
            obj["check"] = row.check;
            obj["status"] = row.pass ? "pass" : "fail";
            obj["detail"] = row.detail;
            arr.push_back(std::move(obj));
        }
        out << arr.dump(2) << "\n";
        return;
    }
    for (const VerifyRow& row : rows)
        out << row.suite << "," << row.check << "," << (row.pass ? "pass" : "fail") << "," << row.detail << "\n";
}

inline TriangleKind to_triangle_kind(const std::string& kind) {
    if (kind == "u" || kind == "A1") return TriangleKind::first_kind;
    if (kind == "U" || kind == "A2") return TriangleKind::second_kind;
    if (kind == "u_r" || kind == "U1r") return TriangleKind::first_kind_r;
    if (kind == "U_r" || kind == "U2r") return TriangleKind::second_kind_r;
    throw UsageError("unknown kind '" + kind + "'");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// verify suites
// ---------------------------------------------------------------------------

namespace suites {

inline std::string pair_witness(int n, int k) {
    return "(n=" + std::to_string(n) + " k=" + std::to_string(k) + ")";
}

inline std::string range_tag(const detail::RRange& r) {
    return "r=" + std::to_string(r.lo) + ".." + std::to_string(r.hi);
}

// Route equivalence for both kinds, specialization at r=0, sign pattern,
// constancy collapse, connection identities, and the doubled-j0 regression
// witness.
inline std::vector<VerifyRow> routes(int max_n, detail::RRange rr) {
    std::vector<VerifyRow> rows;
    const Triangle first_r(TriangleKind::first_kind_r, max_n);
    const Triangle second_r(TriangleKind::second_kind_r, max_n);
    const Triangle first0(TriangleKind::first_kind, max_n);
    const Triangle second0(TriangleKind::second_kind, max_n);
    const std::string nn = "n<=" + std::to_string(max_n);

    auto check_all = [&](const std::string& name, auto&& predicate) {
        VerifyRow row{"routes", name + " " + nn, true, ""};
        for (int n = 0; n <= max_n && row.pass; ++n)
            for (int k = 0; k <= n && row.pass; ++k)
                if (!predicate(n, k)) {
                    row.pass = false;
                    row.detail = pair_witness(n, k);
                }
        rows.push_back(std::move(row));
    };

    check_all("first-kind-row-recurrence", [&](int n, int k) {
        return k == 0 || row_recurrence_first(first_r, n, k) == first_r.at(n, k);
    });
    check_all("first-kind-from-r0", [&](int n, int k) {
        return convert_ur_from_u(first0, n, k) == first_r.at(n, k);
    });
    check_all("first-kind-stirling", [&](int n, int k) { return ur_via_stirling(n, k) == first_r.at(n, k); });
    check_all("first-kind-sigma-form", [&](int n, int k) {
        return triangle_as_sigma(n, n - k) == first_r.at(n, k);
    });
    check_all("second-kind-geometric-recurrence", [&](int n, int k) {
        return k == 0 || geometric_recurrence_second(second_r, n, k) == second_r.at(n, k);
    });
    check_all("second-kind-from-r0", [&](int n, int k) {
        return convert_Ur_from_U(second0, n, k) == second_r.at(n, k);
    });
    check_all("second-kind-h-form", [&](int n, int k) { return triangle_as_h(k, n - k) == second_r.at(n, k); });

    {
        VerifyRow row{"routes", "second-kind-explicit " + nn + " " + range_tag(rr), true, ""};
        for (long long rv = rr.lo; rv <= rr.hi && row.pass; ++rv)
            for (int n = 0; n <= max_n && row.pass; ++n)
                for (int k = 0; k <= n && row.pass; ++k)
                    if (explicit_second_kind(n, k, BigInt(rv)) != second_r.at(n, k).eval(BigInt(rv))) {
                        row.pass = false;
                        row.detail = pair_witness(n, k) + " r=" + std::to_string(rv);
                    }
        rows.push_back(std::move(row));
    }
    {
        // The j=0 term of the explicit formula must be halved; at full weight
        // the value drifts off the recurrence. Recorded counterexample.
        const BigRat doubled = explicit_second_kind_j0_doubled(3, 2, 2);
        const BigInt corrected = explicit_second_kind(3, 2, BigInt(2));
        const Triangle witness(TriangleKind::second_kind_r, 3);
        const bool ok = doubled == BigRat(13) && corrected == 11 && corrected == witness.at(3, 2).eval(BigInt(2));
        rows.push_back({"routes", "explicit-j0-doubled-counterexample", ok,
                        "(n=3 k=2 r=2) doubled-weight=" + doubled.str() + " recurrence=" + corrected.str()});
    }
    check_all("specialization-r0-first", [&](int n, int k) {
        return PolyR(first_r.at(n, k).eval(0)) == first0.at(n, k);
    });
    check_all("specialization-r0-second", [&](int n, int k) {
        return PolyR(second_r.at(n, k).eval(0)) == second0.at(n, k);
    });
    check_all("first-kind-sign-pattern", [&](int n, int k) {
        PolyR unsigned_entry = first_r.at(n, k);
        if ((n - k) % 2 != 0) unsigned_entry = -unsigned_entry;
        for (const BigInt& c : unsigned_entry.coefficients())
            if (c < 0) return false;
        return k < 1 || unsigned_entry.constant() > 0;
    });
    check_all("constancy-collapse-first", [&](int n, int k) {
        const PolyR v = convert_u_from_ur(first_r, n, k);
        return v.is_constant() && v == first0.at(n, k);
    });
    check_all("constancy-collapse-second", [&](int n, int k) {
        const PolyR v = convert_U_from_Ur(second_r, n, k);
        return v.is_constant() && v == second0.at(n, k);
    });
    {
        VerifyRow row{"routes", "special-values " + nn, true, ""};
        for (int n = 1; n <= max_n && row.pass; ++n) {
            const bool ok = special_value(SpecialValue::first_kind_k1, n) == first_r.at(n, 1) &&
                            special_value(SpecialValue::first_kind_penultimate, n) == first_r.at(n, n - 1) &&
                            special_value(SpecialValue::second_kind_k1, n) == second_r.at(n, 1) &&
                            special_value(SpecialValue::second_kind_penultimate, n) == second_r.at(n, n - 1);
            if (!ok) {
                row.pass = false;
                row.detail = "(n=" + std::to_string(n) + ")";
            }
        }
        rows.push_back(std::move(row));
    }
    {
        const int conn_max = std::min(max_n, 10);
        VerifyRow row{"routes", "connection-identities n<=" + std::to_string(conn_max) + " " + range_tag(rr),
                      true, ""};
        for (long long rv = rr.lo; rv <= rr.hi && row.pass; ++rv)
            for (int n = 0; n <= conn_max && row.pass; ++n) {
                std::vector<BigInt> xs;
                for (int x = -(n / 2 + 1); static_cast<int>(xs.size()) < n + 1; ++x) xs.emplace_back(x);
                if (!verify_connection_identity(ConnectionKind::first, n, BigInt(rv), xs) ||
                    !verify_connection_identity(ConnectionKind::second, n, BigInt(rv), xs)) {
                    row.pass = false;
                    row.detail = "(n=" + std::to_string(n) + " r=" + std::to_string(rv) + ")";
                }
            }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::vector<VerifyRow> orthogonality(int max_n) {
    std::vector<VerifyRow> rows;
    {
        VerifyRow row{"orthogonality", "U1*U2=U2*U1=I n<=" + std::to_string(max_n), true, ""};
        for (int n = 1; n <= max_n && row.pass; ++n)
            if (!verify_orthogonality(n)) {
                row.pass = false;
                row.detail = "(n=" + std::to_string(n) + ")";
            }
        rows.push_back(std::move(row));
    }
    {
        VerifyRow row{"orthogonality", "inverse-relation-roundtrip 10 sequences", true, ""};
        std::mt19937_64 gen(20240605);
        const int dim = 10;
        const SquareMatrix u1 = build_U1(dim);
        const SquareMatrix u2 = build_U2(dim);
        for (int trial = 0; trial < 10 && row.pass; ++trial) {
            std::vector<PolyR> b;
            for (int i = 0; i < dim; ++i)
                b.emplace_back(BigInt(static_cast<long long>(gen() % 199) - 99));
            const std::vector<PolyR> a = mat_vec(u2, b);
            if (mat_vec(u1, a) != b) {
                row.pass = false;
                row.detail = "(trial=" + std::to_string(trial) + ")";
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::vector<VerifyRow> factorization(int max_n) {
    std::vector<VerifyRow> rows;
    const std::string nn = "n<=" + std::to_string(max_n);
    {
        VerifyRow row{"factorization", "U1=A1*P[-r] and U2=P[r]*A2 " + nn, true, ""};
        for (int n = 1; n <= max_n && row.pass; ++n)
            if (!verify_factorizations(n)) {
                row.pass = false;
                row.detail = "(n=" + std::to_string(n) + ")";
            }
        rows.push_back(std::move(row));
    }
    {
        VerifyRow row{"factorization", "pascal-inverse P[r]*P[-r]=I " + nn, true, ""};
        const PolyR r = PolyR::variable();
        for (int n = 1; n <= max_n && row.pass; ++n)
            if (!mat_is_identity(mat_mul(build_pascal(n, r), build_pascal(n, -r)))) {
                row.pass = false;
                row.detail = "(n=" + std::to_string(n) + ")";
            }
        rows.push_back(std::move(row));
    }
    {
        VerifyRow row{"factorization", "pascal-translation P[y]*P[z]=P[y+z]", true, ""};
        std::mt19937_64 gen(8675309);
        for (int trial = 0; trial < 8 && row.pass; ++trial) {
            const PolyR y{BigInt(static_cast<long long>(gen() % 19) - 9)};
            const PolyR z{BigInt(static_cast<long long>(gen() % 19) - 9)};
            const int n = 6;
            if (mat_mul(build_pascal(n, y), build_pascal(n, z)) != build_pascal(n, y + z)) {
                row.pass = false;
                row.detail = "(y=" + poly_format(y) + " z=" + poly_format(z) + ")";
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::vector<VerifyRow> ogf(int max_n, detail::RRange rr) {
    std::vector<VerifyRow> rows;
    const Triangle first_r(TriangleKind::first_kind_r, max_n);
    const int order = std::max(12, max_n);
    const Triangle second_r(TriangleKind::second_kind_r, order);
    {
        VerifyRow row{"ogf", "first-kind-product n<=" + std::to_string(max_n), true, ""};
        for (int n = 0; n <= max_n && row.pass; ++n)
            if (!ogf_first_kind_check(first_r, n, std::max(n, 12))) {
                row.pass = false;
                row.detail = "(n=" + std::to_string(n) + ")";
            }
        rows.push_back(std::move(row));
    }
    {
        VerifyRow row{"ogf", "second-kind-series k<=6 order=" + std::to_string(order), true, ""};
        for (int k = 0; k <= 6 && row.pass; ++k) {
            const std::vector<PolyR> series = ogf_second_kind_series(k, order);
            for (int n = 0; n <= order && row.pass; ++n)
                if (series[static_cast<std::size_t>(n)] != second_r.at(n, k)) {
                    row.pass = false;
                    row.detail = "(k=" + std::to_string(k) + " n=" + std::to_string(n) + ")";
                }
        }
        rows.push_back(std::move(row));
    }
    {
        VerifyRow row{"ogf", "second-kind-egf n<=" + std::to_string(order) + " k<=6 " + range_tag(rr), true, ""};
        for (long long rv = rr.lo; rv <= rr.hi && row.pass; ++rv)
            for (int k = 0; k <= 6 && row.pass; ++k)
                if (!egf_second_kind_check(second_r, k, order, BigInt(rv))) {
                    row.pass = false;
                    row.detail = "(k=" + std::to_string(k) + " r=" + std::to_string(rv) + ")";
                }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::vector<VerifyRow> symfunc(int max_n) {
    std::vector<VerifyRow> rows;
    const Triangle first_r(TriangleKind::first_kind_r, max_n);
    const Triangle second_r(TriangleKind::second_kind_r, max_n);
    const std::string tag = "n+k<=" + std::to_string(max_n);
    {
        VerifyRow row{"symfunc", "sigma-form " + tag, true, ""};
        for (int n = 0; n <= max_n && row.pass; ++n)
            for (int k = 0; k <= n && row.pass; ++k)
                if (triangle_as_sigma(n, k) != first_r.at(n, n - k)) {
                    row.pass = false;
                    row.detail = pair_witness(n, k);
                }
        rows.push_back(std::move(row));
    }
    {
        VerifyRow row{"symfunc", "h-form " + tag, true, ""};
        for (int n = 0; n <= max_n && row.pass; ++n)
            for (int k = 0; n + k <= max_n && row.pass; ++k)
                if (triangle_as_h(n, k) != second_r.at(n + k, n)) {
                    row.pass = false;
                    row.detail = pair_witness(n, k);
                }
        rows.push_back(std::move(row));
    }
    std::mt19937_64 gen(424242);
    auto random_input = [&](int len) {
        SymInput zs;
        for (int i = 0; i < len; ++i) zs.emplace_back(BigInt(static_cast<long long>(gen() % 11) - 5));
        return zs;
    };
    {
        VerifyRow row{"symfunc", "merca-square len<=8", true, ""};
        for (int len = 0; len <= 8 && row.pass; ++len)
            for (int trial = 0; trial < 4 && row.pass; ++trial) {
                const SymInput zs = random_input(len);
                for (int i = 0; i <= len && row.pass; ++i)
                    if (!merca_square_identity_check(i, zs)) {
                        row.pass = false;
                        row.detail = "(len=" + std::to_string(len) + " i=" + std::to_string(i) + ")";
                    }
            }
        rows.push_back(std::move(row));
    }
    for (const SymKind which : {SymKind::sigma, SymKind::h}) {
        const std::string name = which == SymKind::sigma ? "merca-shift-sigma" : "merca-shift-h";
        VerifyRow row{"symfunc", name + " k<=8", true, ""};
        for (int len = 1; len <= 8 && row.pass; ++len)
            for (int trial = 0; trial < 3 && row.pass; ++trial) {
                const SymInput zs = random_input(len);
                const int k_max = which == SymKind::sigma ? len : 8;
                for (int k = 0; k <= k_max && row.pass; ++k) {
                    const bool with_r = merca_shift_identity_check(which, k, PolyR::variable(), zs);
                    const PolyR c{BigInt(static_cast<long long>(gen() % 11) - 5)};
                    const bool with_const = merca_shift_identity_check(which, k, c, zs);
                    if (!with_r || !with_const) {
                        row.pass = false;
                        row.detail = "(len=" + std::to_string(len) + " k=" + std::to_string(k) + ")";
                    }
                }
            }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::vector<VerifyRow> logconcavity(int max_n, detail::RRange rr) {
    std::vector<VerifyRow> rows;
    const Triangle tri(TriangleKind::first_kind_r, max_n);
    const std::string tag = "2<=n<=" + std::to_string(max_n) + " " + range_tag(rr);
    {
        VerifyRow row{"logconcavity", "strict-log-concavity " + tag, true, ""};
        for (long long rv = rr.lo; rv <= rr.hi && row.pass; ++rv)
            for (int n = 2; n <= max_n && row.pass; ++n) {
                const std::vector<BigInt> full = unsigned_first_kind_row(tri, n, BigInt(rv));
                // |u_r(n,0)| = prod (r+i^2) vanishes at r=0; the checked
                // window starts at k=1 there.
                const std::size_t start = rv == 0 ? 1 : 0;
                const std::span<const BigInt> window(full.data() + start, full.size() - start);
                const LogConcavityResult result = check_log_concavity(window, true);
                if (!result.holds) {
                    row.pass = false;
                    row.detail = "(n=" + std::to_string(n) + " r=" + std::to_string(rv) +
                                 " k=" + std::to_string(*result.violation + start) + ")";
                }
            }
        rows.push_back(std::move(row));
    }
    {
        VerifyRow row{"logconcavity", "newton-inequality " + tag, true, ""};
        for (long long rv = rr.lo; rv <= rr.hi && row.pass; ++rv)
            for (int n = 2; n <= max_n && row.pass; ++n)
                if (!check_newton_inequality(tri, n, BigInt(rv))) {
                    row.pass = false;
                    row.detail = "(n=" + std::to_string(n) + " r=" + std::to_string(rv) + ")";
                }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::vector<VerifyRow> distribution(int max_n, detail::RRange rr) {
    std::vector<VerifyRow> rows;
    const std::string tag = "n<=" + std::to_string(max_n) + " " + range_tag(rr);
    VerifyRow norm{"distribution", "pmf-normalization " + tag, true, ""};
    VerifyRow moments{"distribution", "moment-agreement " + tag, true, ""};
    const int pgf_max = std::min(max_n, 12);
    VerifyRow pgf{"distribution", "pgf-identity n<=" + std::to_string(pgf_max) + " " + range_tag(rr), true, ""};
    for (long long rv = rr.lo; rv <= rr.hi; ++rv)
        for (int n = 1; n <= max_n; ++n) {
            const PBDist d = build_dist(n, BigInt(rv));
            const std::string witness = "(n=" + std::to_string(n) + " r=" + std::to_string(rv) + ")";
            BigRat total;
            for (const BigRat& f : d.pmf) total += f;
            if (norm.pass && total != 1) {
                norm.pass = false;
                norm.detail = witness;
            }
            const auto [mean, variance] = moments_from_pmf(d);
            if (moments.pass && (mean != d.mean || variance != d.variance)) {
                moments.pass = false;
                moments.detail = witness;
            }
            if (pgf.pass && n <= pgf_max && !pgf_product_check(d)) {
                pgf.pass = false;
                pgf.detail = witness;
            }
        }
    rows.push_back(std::move(norm));
    rows.push_back(std::move(moments));
    rows.push_back(std::move(pgf));
    return rows;
}

}  // namespace suites

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

namespace detail {

inline int cmd_table(Flags& flags, std::ostream& out) {
    const std::string kind = flags.require("kind");
    const long long max_n = to_int(flags.require("max-n"), "max-n");
    if (max_n < 0) throw UsageError("--max-n must be >= 0");
    const std::optional<std::string> r_text = flags.take("r");
    const Format format = to_format(flags.take("format"), Format::csv);
    flags.reject_unknown();

    std::optional<BigInt> r_val;
    if (r_text) r_val = to_bigint(*r_text, "r");

    std::vector<OutputRecord> records;
    auto value_of = [&](const PolyR& p) { return r_val ? p.eval(*r_val).str() : poly_format(p); };

    if (kind == "pascal") {
        for (long long n = 0; n <= max_n; ++n)
            for (long long k = 0; k <= n; ++k) {
                const PolyR entry = PolyR::monomial(binomial(BigInt(n), BigInt(k)),
                                                    static_cast<std::size_t>(n - k));
                records.push_back({n, k, value_of(entry), ""});
            }
    } else {
        const TriangleKind tk = to_triangle_kind(kind);
        if (r_val && !kind_uses_r(tk)) throw UsageError("kind '" + kind + "' fixes r=0; --r not allowed");
        const Triangle tri(tk, static_cast<int>(max_n));
        for (int n = 0; n <= max_n; ++n)
            for (int k = 0; k <= n; ++k) records.push_back({n, k, value_of(tri.at(n, k)), ""});
    }
    write_records(out, records, format, false);
    return 0;
}

inline int cmd_eval(Flags& flags, std::ostream& out) {
    const std::string kind = flags.require("kind");
    const long long n_ll = to_int(flags.require("n"), "n");
    const long long k_ll = to_int(flags.require("k"), "k");
    const std::string route = flags.require("route");
    const std::optional<std::string> r_text = flags.take("r");
    const std::optional<std::string> format_text = flags.take("format");
    flags.reject_unknown();

    if (n_ll < 0 || k_ll < 0 || k_ll > n_ll) throw UsageError("need 0 <= k <= n");
    const int n = static_cast<int>(n_ll);
    const int k = static_cast<int>(k_ll);

    if (kind != "u" && kind != "U" && kind != "u_r" && kind != "U_r")
        throw UsageError("eval expects kind u, U, u_r or U_r");
    const TriangleKind tk = to_triangle_kind(kind);
    const bool first = kind_is_first(tk);
    const bool uses_r = kind_uses_r(tk);

    std::optional<BigInt> r_val;
    if (r_text) {
        if (!uses_r) throw UsageError("kind '" + kind + "' fixes r=0; --r not allowed");
        r_val = to_bigint(*r_text, "r");
    }

    static const std::vector<std::string> all_routes = {"recurrence", "row-rec", "geom-rec", "from-r0",
                                                        "explicit",   "stirling", "sigma",   "h"};
    static const std::vector<std::string> first_routes = {"recurrence", "row-rec", "from-r0", "stirling",
                                                          "sigma"};
    static const std::vector<std::string> second_routes = {"recurrence", "geom-rec", "from-r0", "explicit",
                                                           "h"};
    auto has = [](const std::vector<std::string>& v, const std::string& s) {
        return std::find(v.begin(), v.end(), s) != v.end();
    };
    if (!has(all_routes, route)) throw UsageError("unknown route '" + route + "'");
    if (!has(first ? first_routes : second_routes, route) || (route == "from-r0" && !uses_r))
        throw UsageError("route '" + route + "' does not apply to kind '" + kind + "'");

    std::string value;
    if (route == "explicit") {
        // Integer-valued route; r must be pinned.
        BigInt rv;
        if (uses_r) {
            if (!r_val) throw UsageError("route 'explicit' requires --r");
            rv = *r_val;
        }
        value = explicit_second_kind(n, k, rv).str();
    } else {
        PolyR result;
        if (route == "recurrence") {
            result = Triangle(tk, n).at(n, k);
        } else if (route == "row-rec") {
            if (k == 0) throw UsageError("route 'row-rec' needs k >= 1");
            result = row_recurrence_first(Triangle(tk, n), n, k);
        } else if (route == "geom-rec") {
            if (k == 0) throw UsageError("route 'geom-rec' needs k >= 1");
            result = geometric_recurrence_second(Triangle(tk, n), n, k);
        } else if (route == "from-r0") {
            if (first)
                result = convert_ur_from_u(Triangle(TriangleKind::first_kind, n), n, k);
            else
                result = convert_Ur_from_U(Triangle(TriangleKind::second_kind, n), n, k);
        } else if (route == "stirling") {
            result = ur_via_stirling(n, k);
        } else if (route == "sigma") {
            result = triangle_as_sigma(n, n - k);
        } else {  // h
            result = triangle_as_h(k, n - k);
        }
        if (!uses_r) result = PolyR(result.eval(0));
        if (r_val) result = PolyR(result.eval(*r_val));
        value = poly_format(result);
    }

    const Format format = to_format(format_text, Format::plain);
    if (format == Format::plain) {
        out << value << "\n";
    } else {
        const OutputRecord rec{n, k, value, route};
        write_records(out, std::span<const OutputRecord>(&rec, 1), format, true);
    }
    return 0;
}

inline int cmd_verify(Flags& flags, std::ostream& out, std::ostream& err) {
    const std::string suite = flags.require("suite");
    const std::optional<std::string> max_n_text = flags.take("max-n");
    const std::optional<std::string> r_text = flags.take("r");
    const Format format = to_format(flags.take("format"), Format::csv);
    flags.reject_unknown();

    std::optional<int> max_n_flag;
    if (max_n_text) {
        const long long v = to_int(*max_n_text, "max-n");
        if (v < 0) throw UsageError("--max-n must be >= 0");
        max_n_flag = static_cast<int>(v);
    }
    const RRange rr = r_text ? to_range(*r_text, "r") : RRange{0, 5};
    if (rr.lo < 0) throw UsageError("--r range must be nonnegative");
    auto max_n = [&](int fallback) { return max_n_flag.value_or(fallback); };

    std::vector<VerifyRow> rows;
    auto append = [&](std::vector<VerifyRow> more) {
        for (auto& row : more) rows.push_back(std::move(row));
    };

    bool known = false;
    if (suite == "routes" || suite == "all") known = true, append(suites::routes(max_n(12), rr));
    if (suite == "orthogonality" || suite == "all") known = true, append(suites::orthogonality(max_n(12)));
    if (suite == "factorization" || suite == "all") known = true, append(suites::factorization(max_n(10)));
    if (suite == "ogf" || suite == "all") known = true, append(suites::ogf(max_n(10), rr));
    if (suite == "symfunc" || suite == "all") known = true, append(suites::symfunc(max_n(12)));
    if (suite == "logconcavity" || suite == "all") known = true, append(suites::logconcavity(max_n(30), rr));
    if (suite == "distribution" || suite == "all") known = true, append(suites::distribution(max_n(20), rr));
    if (!known) throw UsageError("unknown suite '" + suite + "'");

    write_verify_report(out, rows, format);
    std::size_t passed = 0;
    for (const VerifyRow& row : rows) passed += row.pass ? 1 : 0;
    err << "verify: " << passed << "/" << rows.size() << " checks passed\n";
    return passed == rows.size() ? 0 : 1;
}

inline int cmd_dist(Flags& flags, std::ostream& out) {
    const long long n = to_int(flags.require("n"), "n");
    if (n < 1) throw UsageError("--n must be >= 1");
    const std::optional<std::string> r_text = flags.take("r");
    const BigInt r = r_text ? to_bigint(*r_text, "r") : BigInt(0);
    if (r < 0) throw UsageError("--r must be >= 0");
    const std::optional<std::string> samples_text = flags.take("samples");
    const std::optional<std::string> seed_text = flags.take("seed");
    const Format format = to_format(flags.take("format"), Format::csv);
    flags.reject_unknown();

    std::optional<std::uint64_t> samples;
    if (samples_text) {
        const long long v = to_int(*samples_text, "samples");
        if (v < 1) throw UsageError("--samples must be >= 1");
        samples = static_cast<std::uint64_t>(v);
    }
    const std::uint64_t seed =
        seed_text ? static_cast<std::uint64_t>(to_int(*seed_text, "seed")) : std::uint64_t{0};

    const PBDist d = build_dist(static_cast<int>(n), r);

    std::vector<std::uint64_t> histogram;
    BigRat empirical_mean, deviation_sq, band_sq;
    bool within_band = false;
    if (samples) {
        histogram = sample(d, *samples, seed);
        BigInt weighted = 0;
        for (int k = 0; k <= d.n; ++k) weighted += BigInt(k) * histogram[static_cast<std::size_t>(k)];
        empirical_mean = make_rat(weighted, BigInt(*samples));
        const BigRat deviation = empirical_mean - d.mean;
        deviation_sq = deviation * deviation;
        band_sq = BigRat(16) * d.variance / BigRat(*samples);  // (4 sigma/sqrt(N))^2
        within_band = deviation_sq <= band_sq;
    }

    if (format == Format::json) {
        Json obj;
        obj["n"] = d.n;
        obj["r"] = d.r.str();
        Json pmf = Json::array();
        for (const BigRat& f : d.pmf) pmf.push_back(f.str());
        obj["pmf"] = std::move(pmf);
        obj["mean"] = d.mean.str();
        obj["variance"] = d.variance.str();
        if (samples) {
            obj["samples"] = *samples;
            obj["seed"] = seed;
            obj["histogram"] = histogram;
            obj["empirical_mean"] = empirical_mean.str();
            obj["deviation_sq"] = deviation_sq.str();
            obj["band_sq"] = band_sq.str();
            obj["within_band"] = within_band;
        }
        out << obj.dump(2) << "\n";
        return 0;
    }

    out << "n," << d.n << "\n";
    out << "r," << d.r.str() << "\n";
    for (int k = 0; k <= d.n; ++k) out << "pmf," << k << "," << d.pmf[static_cast<std::size_t>(k)].str() << "\n";
    out << "mean," << d.mean.str() << "\n";
    out << "variance," << d.variance.str() << "\n";
    if (samples) {
        out << "samples," << *samples << "\n";
        out << "seed," << seed << "\n";
        for (int k = 0; k <= d.n; ++k) out << "hist," << k << "," << histogram[static_cast<std::size_t>(k)] << "\n";
        out << "empirical_mean," << empirical_mean.str() << "\n";
        out << "deviation_sq," << deviation_sq.str() << "\n";
        out << "band_sq," << band_sq.str() << "\n";
        out << "within_band," << (within_band ? "true" : "false") << "\n";
    }
    return 0;
}

}  // namespace detail

inline const char* usage_text() {
    return "usage: rcf <command> [--flag=value ...]\n"
           "commands:\n"
           "  table   --kind=<u|U|u_r|U_r|U1r|U2r|A1|A2|pascal> --max-n=N [--r=INT] [--format=csv|json]\n"
           "  eval    --kind=<u|U|u_r|U_r> --n=N --k=K --route=<recurrence|row-rec|geom-rec|from-r0|explicit|stirling|sigma|h>\n"
           "          [--r=INT] [--format=csv|json]\n"
           "  verify  --suite=<routes|orthogonality|factorization|ogf|symfunc|logconcavity|distribution|all>\n"
           "          [--max-n=N] [--r=A..B] [--format=csv|json]\n"
           "  dist    --n=N [--r=INT] [--samples=COUNT] [--seed=SEED] [--format=csv|json]\n";
}

// Dispatches one invocation; returns the process exit code (0 success,
// 1 verification failure, 2 usage error).
inline int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    try {
        if (args.empty()) throw UsageError("missing command");
        const std::string& command = args.front();
        detail::Flags flags(args.subspan(1));
        if (command == "table") return detail::cmd_table(flags, out);
        if (command == "eval") return detail::cmd_eval(flags, out);
        if (command == "verify") return detail::cmd_verify(flags, out, err);
        if (command == "dist") return detail::cmd_dist(flags, out);
        if (command == "help" || command == "--help") {
            out << usage_text();
            return 0;
        }
        throw UsageError("unknown command '" + command + "'");
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n" << usage_text();
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, out, err);
}

}  // namespace rcf::cli
