#ifndef BATCHSCHED_MILP_HPP
#define BATCHSCHED_MILP_HPP

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "batchsched/core.hpp"
#include "batchsched/schedule.hpp"

namespace batchsched {

struct MilpTerm {
    std::string var;
    long long coeff = 0;
};

struct MilpRow {
    std::string name;
    std::vector<MilpTerm> terms;
    char sense = 'L';  // 'L' <=, 'G' >=, 'E' =
    long long rhs = 0;
};

struct MilpModel {
    int n = 0;
    long long big_m = 0;
    int epsilon = 1;
    std::vector<MilpTerm> objective;
    std::vector<MilpRow> rows;
    std::vector<std::string> binaries;
    std::vector<std::string> continuous;
    bool order_cuts = false;
};

// Mixed integer model for the tardy-count batching problem, using one slot
// per potential batch. NT_j flags job j tardy, X_j_b assigns job j to slot
// b, c_j is the job completion, Cb_b and P_b the slot completion and
// processing time. Slots may stay empty (P_b = 0). The big constant couples
// job completions to slot completions and the tardiness indicators to due
// dates; tardiness is strict lateness by at least `epsilon` = 1 time unit.
inline MilpModel build_model(const Instance& inst, bool order_cuts = false) {
    const int n = inst.size();
    MilpModel m;
    m.n = n;
    m.order_cuts = order_cuts;
    long long sum_p = 0;
    int max_d = 0;
    for (const Job& j : inst.jobs()) {
        sum_p += j.p;
        max_d = std::max(max_d, j.d);
    }
    m.big_m = sum_p + max_d;

    auto nt = [](int id) { return "NT_" + std::to_string(id); };
    auto x = [](int id, int b) { return "X_" + std::to_string(id) + "_" + std::to_string(b); };
    auto c = [](int id) { return "c_" + std::to_string(id); };
    auto cb = [](int b) { return "Cb_" + std::to_string(b); };
    auto pb = [](int b) { return "P_" + std::to_string(b); };

    for (const Job& j : inst.jobs()) m.objective.push_back({nt(j.id), 1});

    for (const Job& j : inst.jobs()) {
        MilpRow row{"assign_" + std::to_string(j.id), {}, 'E', 1};
        for (int b = 1; b <= n; ++b) row.terms.push_back({x(j.id, b), 1});
        m.rows.push_back(std::move(row));
    }
    for (int b = 1; b <= n; ++b) {
        MilpRow row{"cap_" + std::to_string(b), {}, 'L', inst.capacity()};
        for (const Job& j : inst.jobs()) row.terms.push_back({x(j.id, b), j.s});
        m.rows.push_back(std::move(row));
    }
    for (const Job& j : inst.jobs()) {
        for (int b = 1; b <= n; ++b) {
            m.rows.push_back({"bp_" + std::to_string(j.id) + "_" + std::to_string(b),
                              {{pb(b), 1}, {x(j.id, b), -j.p}},
                              'G',
                              0});
        }
    }
    m.rows.push_back({"chain_1", {{cb(1), 1}, {pb(1), -1}}, 'E', 0});
    for (int b = 2; b <= n; ++b) {
        m.rows.push_back({"chain_" + std::to_string(b),
                          {{cb(b), 1}, {cb(b - 1), -1}, {pb(b), -1}},
                          'G',
                          0});
    }
    for (const Job& j : inst.jobs()) {
        for (int b = 1; b <= n; ++b) {
            m.rows.push_back({"link_" + std::to_string(j.id) + "_" + std::to_string(b),
                              {{c(j.id), 1}, {cb(b), -1}, {x(j.id, b), -m.big_m}},
                              'G',
                              -m.big_m});
        }
    }
    for (const Job& j : inst.jobs()) {
        m.rows.push_back({"tardy_ub_" + std::to_string(j.id),
                          {{c(j.id), 1}, {nt(j.id), -m.big_m}},
                          'L',
                          j.d});
    }
    for (const Job& j : inst.jobs()) {
        m.rows.push_back({"tardy_lb_" + std::to_string(j.id),
                          {{c(j.id), 1}, {nt(j.id), -m.big_m}},
                          'G',
                          j.d + m.epsilon - m.big_m});
    }
    if (order_cuts) {
        for (int b = 2; b <= n; ++b) {
            m.rows.push_back({"order_" + std::to_string(b),
                              {{cb(b), 1}, {cb(b - 1), -1}},
                              'G',
                              0});
        }
    }

    for (const Job& j : inst.jobs()) m.binaries.push_back(nt(j.id));
    for (const Job& j : inst.jobs()) {
        for (int b = 1; b <= n; ++b) m.binaries.push_back(x(j.id, b));
    }
    for (const Job& j : inst.jobs()) m.continuous.push_back(c(j.id));
    for (int b = 1; b <= n; ++b) m.continuous.push_back(cb(b));
    for (int b = 1; b <= n; ++b) m.continuous.push_back(pb(b));
    return m;
}

namespace detail {

// Emits terms wrapped at a fixed width; continuation lines start with a
// space so a name followed by ':' only ever opens a row.
inline void write_terms(std::ostream& os, const std::vector<MilpTerm>& terms,
                        std::size_t& width) {
    bool first = true;
    for (const MilpTerm& t : terms) {
        std::string piece;
        if (t.coeff >= 0) {
            piece = first ? "" : "+ ";
        } else {
            piece = "- ";
        }
        const long long mag = t.coeff < 0 ? -t.coeff : t.coeff;
        if (mag != 1) piece += std::to_string(mag) + " ";
        piece += t.var;
        if (width + piece.size() + 1 > 76) {
            os << "\n   ";
            width = 3;
        }
        os << " " << piece;
        width += piece.size() + 1;
        first = false;
    }
}

}  // namespace detail

// Canonical LP text; a fixed model always serializes to identical bytes.
inline void write_lp_text(const MilpModel& m, std::ostream& os) {
    os << "\\ batch machine tardy-count model, " << m.n << " jobs, " << m.n << " slots\n";
    os << "\\ big_m=" << m.big_m << " epsilon=" << m.epsilon
       << " order_cuts=" << (m.order_cuts ? 1 : 0) << "\n";
    os << "Minimize\n obj:";
    std::size_t width = 5;
    detail::write_terms(os, m.objective, width);
    os << "\nSubject To\n";
    for (const MilpRow& row : m.rows) {
        os << " " << row.name << ":";
        width = row.name.size() + 2;
        detail::write_terms(os, row.terms, width);
        os << (row.sense == 'L' ? " <= " : row.sense == 'G' ? " >= " : " = ") << row.rhs << "\n";
    }
    os << "Bounds\n";
    for (const std::string& v : m.continuous) os << " " << v << " >= 0\n";
    os << "Binaries\n";
    width = 0;
    for (const std::string& v : m.binaries) {
        if (width + v.size() + 1 > 76) {
            os << "\n";
            width = 0;
        }
        os << " " << v;
        width += v.size() + 1;
    }
    os << "\nEnd\n";
}

inline std::string lp_text(const MilpModel& m) {
    std::ostringstream os;
    write_lp_text(m, os);
    return os.str();
}

inline void write_lp_file(const MilpModel& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    write_lp_text(m, out);
    if (!out) throw IoError("failed writing " + path);
}

struct LpSectionCounts {
    int constraints = 0;
    int bounds = 0;
    int binaries = 0;
};

// Structural re-parse of emitted LP text, used to cross-check the writer:
// every row must come back, one named constraint per row.
inline LpSectionCounts count_lp_sections(const std::string& text) {
    LpSectionCounts out;
    std::istringstream is(text);
    std::string line;
    enum { None, Subject, Bounds, Binaries } section = None;
    while (std::getline(is, line)) {
        if (line.rfind('\\', 0) == 0) continue;
        if (line == "Subject To") {
            section = Subject;
            continue;
        }
        if (line == "Bounds") {
            section = Bounds;
            continue;
        }
        if (line == "Binaries") {
            section = Binaries;
            continue;
        }
        if (line == "End" || line == "Minimize") {
            section = None;
            continue;
        }
        switch (section) {
            case Subject:
                if (line.find(':') != std::string::npos) ++out.constraints;
                break;
            case Bounds:
                if (!line.empty()) ++out.bounds;
                break;
            case Binaries: {
                std::istringstream ls(line);
                std::string tok;
                while (ls >> tok) ++out.binaries;
                break;
            }
            case None:
                break;
        }
    }
    return out;
}

// Variable assignment encoding a concrete schedule: batch i of the schedule
// occupies slot i+1, trailing slots stay empty with zero processing time and
// a completion frozen at the makespan.
inline std::map<std::string, long long> encode_assignment(const Instance& inst,
                                                          const BatchSchedule& sched) {
    const int n = inst.size();
    std::map<std::string, long long> v;
    for (const Job& j : inst.jobs()) {
        for (int b = 1; b <= n; ++b) {
            v["X_" + std::to_string(j.id) + "_" + std::to_string(b)] = 0;
        }
    }
    for (int b = 0; b < sched.batch_count(); ++b) {
        for (int id : sched.batches()[static_cast<std::size_t>(b)]) {
            v["X_" + std::to_string(id) + "_" + std::to_string(b + 1)] = 1;
        }
    }
    for (int b = 1; b <= n; ++b) {
        const bool real = b <= sched.batch_count();
        v["P_" + std::to_string(b)] =
            real ? sched.batch_processing()[static_cast<std::size_t>(b - 1)] : 0;
        v["Cb_" + std::to_string(b)] =
            real ? sched.batch_completion()[static_cast<std::size_t>(b - 1)] : sched.makespan();
    }
    for (const Job& j : inst.jobs()) {
        v["c_" + std::to_string(j.id)] = sched.completion_of(j.id);
        v["NT_" + std::to_string(j.id)] = sched.is_tardy(j.id) ? 1 : 0;
    }
    return v;
}

struct AssignmentCheck {
    bool ok = true;
    std::string first_violation;
    long long objective = 0;
};

// Evaluates every row of the model under a variable assignment; unknown
// variables count as zero.
inline AssignmentCheck check_assignment(const MilpModel& m,
                                        const std::map<std::string, long long>& values) {
    auto value = [&](const std::string& var) -> long long {
        auto it = values.find(var);
        return it == values.end() ? 0 : it->second;
    };
    AssignmentCheck out;
    for (const MilpTerm& t : m.objective) out.objective += t.coeff * value(t.var);
    for (const MilpRow& row : m.rows) {
        long long lhs = 0;
        for (const MilpTerm& t : row.terms) lhs += t.coeff * value(t.var);
        const bool sat = row.sense == 'L'   ? lhs <= row.rhs
                         : row.sense == 'G' ? lhs >= row.rhs
                                            : lhs == row.rhs;
        if (!sat) {
            out.ok = false;
            out.first_violation = row.name;
            return out;
        }
    }
    return out;
}

}  // namespace batchsched

#endif
