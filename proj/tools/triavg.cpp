// triavg — exact-rational workbench for triassociative algebras, weighted
// averaging operators, their tree-indexed cochain complexes, cohomology,
// deformations, and the bounded homotopy (A-infinity / Triass-infinity)
// machinery. Exit codes: 0 all checks pass, 1 mathematical finding,
// 2 usage or format error.

#include "CLI11.hpp"
#include "triavg/io.hpp"
#include "triavg/linf.hpp"
#include "triavg/words.hpp"

#include <iostream>
#include <set>

using namespace triavg;

namespace {

struct Output {
    bool machine = false;
    bool any_finding = false;

    void line(const std::string& status, const std::string& module, const std::string& check,
              const std::string& witness) {
        if (machine)
            std::cout << status << " | " << module << " | " << check << " | " << witness << "\n";
        else if (witness.empty())
            std::cout << status << ": " << module << " " << check << "\n";
        else
            std::cout << status << ": " << module << " " << check << " — " << witness << "\n";
        if (status == "FAIL") any_finding = true;
    }
    void report(const std::string& module, const std::string& check, const Report& r) {
        if (r.ok()) {
            line("PASS", module, check, "");
            return;
        }
        for (const auto& v : r.violations) {
            std::string w = "witness=";
            for (std::size_t i = 0; i < v.tuple.size(); ++i)
                w += (i ? "," : "") + std::to_string(v.tuple[i]);
            w += " lhs=" + v.lhs + " rhs=" + v.rhs;
            line("FAIL", module, check + ":" + v.identity, w);
        }
    }
    void verdict(const std::string& module, const std::string& check, bool ok,
                 const std::string& witness = "") {
        line(ok ? "PASS" : "FAIL", module, check, ok ? "" : witness);
    }
    int exit_code() const { return any_finding ? 1 : 0; }
};

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

RatVector parse_vec(const std::string& s) {
    RatVector v;
    for (const auto& f : split_csv(s)) v.push_back(Rat::parse(f));
    return v;
}

void print_betti(Output& out, const std::string& theory, const BettiReport& r) {
    std::cout << "n | dim C | dim Z | dim B | dim H\n";
    std::cout << r.degree << " | " << r.dim_cochains << " | " << r.dim_kernel << " | "
              << r.dim_image_prev << " | " << r.dim_h << "\n";
    out.line("PASS", "cohomology", theory + ":H^" + std::to_string(r.degree),
             "dim=" + std::to_string(r.dim_h));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"triavg: triassociative / weighted averaging algebra workbench"};
    app.require_subcommand(1);
    Output out;
    app.add_flag("--machine", out.machine, "line-oriented machine report format");

    std::string file, file2, expr, tree_str, alphabet_flag = "x,y", range = "1:2";
    std::string weight_flag;
    bool relaxed = false;
    std::vector<std::string> image_flags;
    int n_arg = 0, index_arg = 0, degree_arg = 1, maxn_arg = 4, maxlen_arg = 4, maxdepth_arg = 2;

    // trees
    auto* trees_cmd = app.add_subcommand("trees", "planar tree combinatorics");
    trees_cmd->require_subcommand(1);
    auto* t_enum = trees_cmd->add_subcommand("enumerate", "list all n-trees in canonical order");
    t_enum->add_option("n", n_arg, "arity")->required();
    auto* t_face = trees_cmd->add_subcommand("face", "remove leaf i");
    t_face->add_option("tree", tree_str, "tree encoding")->required();
    t_face->add_option("i", index_arg, "leaf index")->required();
    auto* t_cls = trees_cmd->add_subcommand("classify", "bullet classes of every slot");
    t_cls->add_option("tree", tree_str, "tree encoding")->required();

    // check
    auto* check_cmd = app.add_subcommand("check", "axiom checkers");
    check_cmd->require_subcommand(1);
    for (const char* what : {"assoc", "bimodule", "triass", "averaging", "relative"}) {
        auto* c = check_cmd->add_subcommand(what);
        c->add_option("file", file, "structure-constants file")->required();
        if (std::string(what) == "averaging" || std::string(what) == "relative")
            c->add_option("--weight", weight_flag, "overrides the file weight");
        if (std::string(what) == "averaging")
            c->add_flag("--relaxed", relaxed,
                        "weight-0-compatible reading: unweighted clauses plus "
                        "lambda P(a)P(b) = lambda^2 P(ab)");
    }

    // induce
    auto* induce_cmd = app.add_subcommand("induce", "induced structures");
    induce_cmd->require_subcommand(1);
    for (const char* what : {"triass", "tridend", "ravg"})
        induce_cmd->add_subcommand(what)->add_option("file", file, "input file")->required();

    // cohomology
    auto* coh_cmd = app.add_subcommand("cohomology", "Betti reports");
    coh_cmd->require_subcommand(1);
    for (const char* what : {"triass", "operator", "relative", "averaging", "assact"}) {
        auto* c = coh_cmd->add_subcommand(what);
        c->add_option("file", file, "input file")->required();
        c->add_option("--degree", degree_arg, "cochain degree (1..3)");
    }

    // les
    auto* les_cmd = app.add_subcommand("les", "long exact sequence exactness");
    les_cmd->add_option("file", file, "relative averaging file")->required();
    les_cmd->add_option("--range", range, "degree range, e.g. 1:2");

    // deform
    auto* def_cmd = app.add_subcommand("deform", "infinitesimal deformations");
    def_cmd->require_subcommand(1);
    auto* d_cls = def_cmd->add_subcommand("classify", "H^2 representatives");
    d_cls->add_option("file", file, "relative averaging file")->required();
    auto* d_chk = def_cmd->add_subcommand("check", "mod-t^2 validity vs cocycle condition");
    d_chk->add_option("file", file, "relative averaging file")->required();
    d_chk->add_option("direction", file2, "direction file")->required();

    // mc
    auto* mc_cmd = app.add_subcommand("mc", "Maurer-Cartan checks");
    mc_cmd->require_subcommand(1);
    mc_cmd->add_subcommand("operator")->add_option("file", file)->required();
    mc_cmd->add_subcommand("pair")->add_option("file", file)->required();

    // linf
    auto* linf_cmd = app.add_subcommand("linf", "L-infinity structure checks");
    linf_cmd->require_subcommand(1);
    auto* l_jac = linf_cmd->add_subcommand("jacobi", "higher Jacobi identities");
    l_jac->add_option("file", file)->required();
    l_jac->add_option("--max-n", maxn_arg, "largest identity checked (<= 4)");

    // free
    auto* free_cmd = app.add_subcommand("free", "free averaging algebra");
    free_cmd->require_subcommand(1);
    auto* f_norm = free_cmd->add_subcommand("normalize", "normal form of a word");
    f_norm->add_option("expr", expr, "bracketed word")->required();
    f_norm->add_option("--weight", weight_flag, "weight p/q")->required();
    f_norm->add_option("--alphabet", alphabet_flag, "comma-separated generators");
    auto* f_enum = free_cmd->add_subcommand("enumerate", "irreducible words within bounds");
    f_enum->add_option("--alphabet", alphabet_flag, "comma-separated generators");
    f_enum->add_option("--max-len", maxlen_arg, "generator-count bound");
    f_enum->add_option("--max-depth", maxdepth_arg, "nesting bound");
    auto* f_eval = free_cmd->add_subcommand("eval", "universal morphism into a fixture");
    f_eval->add_option("expr", expr)->required();
    f_eval->add_option("file", file, "averaging algebra file")->required();
    f_eval->add_option("--weight", weight_flag, "overrides the file weight");
    f_eval->add_option("--alphabet", alphabet_flag, "comma-separated generators");
    f_eval->add_option("--image", image_flags, "image vector per generator, e.g. 1,0")->required();

    // homotopy
    auto* h_cmd = app.add_subcommand("homotopy", "bounded homotopy structures");
    h_cmd->require_subcommand(1);
    auto* h_ainf = h_cmd->add_subcommand("ainf", "A-infinity identity check");
    h_ainf->add_option("file", file)->required();
    h_ainf->add_option("--max-n", maxn_arg, "largest identity checked");
    auto* h_tri = h_cmd->add_subcommand("triassinf", "Triass-infinity identity check");
    h_tri->add_option("file", file)->required();
    h_tri->add_option("--max-n", maxn_arg, "largest identity checked");
    auto* h_op = h_cmd->add_subcommand("operator", "homotopy relative averaging operator");
    h_op->add_option("file", file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (trees_cmd->parsed()) {
            if (t_enum->parsed()) {
                for (const auto& t : enumerate_trees(n_arg)) std::cout << t.encode() << "\n";
                std::cout << enumerate_trees(n_arg).size() << " trees\n";
            } else if (t_face->parsed()) {
                std::cout << face(PlanarTree::decode(tree_str), index_arg).encode() << "\n";
            } else {
                PlanarTree t = PlanarTree::decode(tree_str);
                for (int i = 0; i <= t.arity(); ++i) {
                    BulletKind b = bullet(t, i);
                    std::cout << i << " "
                              << (b == BulletKind::LeftDashv
                                      ? "dashv"
                                      : b == BulletKind::RightVdash ? "vdash" : "perp")
                              << "\n";
                }
            }
            return 0;
        }

        if (check_cmd->parsed()) {
            SpecFile sf = load_spec(file);
            auto* sub = check_cmd->get_subcommands().front();
            const std::string what = sub->get_name();
            if (what == "assoc") {
                if (!sf.assoc) throw std::invalid_argument("file has no assoc section");
                out.report("algebras", "assoc", check_assoc(*sf.assoc));
            } else if (what == "bimodule") {
                if (!sf.bimodule) throw std::invalid_argument("file has no bimodule section");
                out.report("algebras", "bimodule", check_bimodule(*sf.bimodule));
            } else if (what == "triass") {
                if (!sf.triass) throw std::invalid_argument("file has no triass section");
                Report r = check_triass(*sf.triass);
                out.report("algebras", "triass", r);
                if (!r.ok()) out.report("algebras", "diass-fragment", [&] {
                    Report d;
                    const std::set<std::string> diass{"a1", "a2", "a3", "a4", "a5"};
                    for (const auto& v : r.violations)
                        if (diass.count(v.identity)) d.violations.push_back(v);
                    return d;
                }());
            } else if (what == "averaging") {
                if (!sf.assoc || !sf.op) throw std::invalid_argument("needs assoc and operator");
                if (weight_flag.empty() && !sf.weight)
                    throw std::invalid_argument("no weight in the file; pass --weight");
                Rat w = weight_flag.empty() ? *sf.weight : Rat::parse(weight_flag);
                out.report("operators", relaxed ? "averaging-relaxed" : "averaging",
                           relaxed ? check_averaging_relaxed(*sf.assoc, *sf.op, w)
                                   : check_averaging(*sf.assoc, *sf.op, w));
            } else {
                RAvgSpec s = sf.to_ravg();
                if (!weight_flag.empty()) s.lambda = Rat::parse(weight_flag);
                out.report("operators", "relative", check_relative_averaging(s));
                out.verdict("operators", "graph-criterion",
                            graph_check(s) == check_relative_averaging(s, true).ok(),
                            "graph and direct check disagree");
            }
            return out.exit_code();
        }

        if (induce_cmd->parsed()) {
            SpecFile sf = load_spec(file);
            const std::string what = induce_cmd->get_subcommands().front()->get_name();
            if (what == "triass") {
                TriassSpec d = induced_triass(sf.to_ravg());
                SpecFile o;
                o.triass = d;
                std::cout << dump_spec(o);
                out.report("operators", "induced-triass", check_triass(d));
            } else if (what == "tridend") {
                if (!sf.triass) throw std::invalid_argument("file has no triass section");
                TriDendSpec t = induced_tridendriform(*sf.triass);
                out.report("algebras", "tridendriform", check_tridend(t));
            } else {
                if (!sf.triass) throw std::invalid_argument("file has no triass section");
                TriassQuotient q = triass_to_ravg(*sf.triass);
                SpecFile o;
                o.assoc = q.bimodule.algebra;
                o.bimodule = q.bimodule;
                o.op = q.q;
                o.weight = Rat(1);
                std::cout << dump_spec(o);
                RAvgSpec s{q.bimodule, q.q, Rat(1)};
                out.report("algebras", "functor-to-ravg", check_relative_averaging(s));
            }
            return out.exit_code();
        }

        if (coh_cmd->parsed()) {
            SpecFile sf = load_spec(file);
            const std::string what = coh_cmd->get_subcommands().front()->get_name();
            if (what == "triass") {
                if (!sf.triass) throw std::invalid_argument("file has no triass section");
                BettiReport r = triass_cohomology(*sf.triass, degree_arg);
                print_betti(out, "triass", r);
                auto keys = triass_basis_keys(sf.triass->dim, degree_arg);
                for (std::size_t q = 0; q < r.representatives.size(); ++q) {
                    std::cout << "representative " << q + 1 << ":\n";
                    Cochain rep(degree_arg, sf.triass->dim, sf.triass->dim);
                    for (std::size_t i = 0; i < keys.size(); ++i)
                        rep.add(keys[i], r.representatives[q][i]);
                    std::cout << dump_cochain(rep);
                }
            } else {
                RAvgSpec s = sf.to_ravg();
                // the twisted differentials presuppose a verified operator
                Report pre = what == "assact" ? check_bimodule(s.bimodule, true)
                                              : check_relative_averaging(s, true);
                if (!pre.ok()) {
                    out.report("cohomology", "input-validation", pre);
                    return out.exit_code();
                }
                CohomologyContext c(std::move(s));
                Theory t = what == "operator" ? Theory::Operator
                           : what == "relative" ? Theory::RAvg
                           : what == "averaging" ? Theory::Avg
                                                 : Theory::AssAct;
                BettiReport r = cohomology(c, t, degree_arg);
                print_betti(out, what, r);
                // representative dumps: the gamma block in the cochain
                // format, the (f, g, h) block as slot-indexed lines
                const auto& basis = t == Theory::Operator ? c.operator_basis(degree_arg)
                                    : t == Theory::RAvg   ? c.ravg_basis(degree_arg)
                                    : t == Theory::Avg    ? c.avg_basis(degree_arg)
                                                          : c.assact_basis(degree_arg);
                for (std::size_t q = 0; q < r.representatives.size(); ++q) {
                    std::cout << "representative " << q + 1 << ":\n";
                    for (std::size_t i = 0; i < basis.size(); ++i) {
                        const Rat& v = r.representatives[q][i];
                        if (v.is_zero()) continue;
                        const RAvgCochain& e = basis.elems[i];
                        if (!e.maps.is_zero()) {
                            const MKey& k = e.maps.coeffs().begin()->first;
                            std::cout << "map |";
                            for (int s : k.in) std::cout << " " << s;
                            std::cout << " | " << k.out << " | " << v.str() << "\n";
                        } else {
                            Cochain g = e.gamma;
                            g.scale(v);
                            std::cout << dump_cochain(g);
                        }
                    }
                }
            }
            return out.exit_code();
        }

        if (les_cmd->parsed()) {
            auto colon = range.find(':');
            int hi = colon == std::string::npos ? std::stoi(range)
                                                : std::stoi(range.substr(colon + 1));
            RAvgSpec s = load_spec(file).to_ravg();
            Report pre = check_relative_averaging(s, true);
            if (!pre.ok()) {
                out.report("cohomology", "input-validation", pre);
                return out.exit_code();
            }
            CohomologyContext c(std::move(s));
            LesReport r = long_exact_check(c, hi);
            for (const auto& n : r.nodes)
                out.verdict("cohomology", "les:" + n.name, n.exact,
                            "rank_in=" + std::to_string(n.rank_in) +
                                " ker_out=" + std::to_string(n.dim_ker_out));
            return out.exit_code();
        }

        if (def_cmd->parsed()) {
            RAvgSpec s = load_spec(file).to_ravg();
            Report pre = check_relative_averaging(s, true);
            if (!pre.ok()) {
                out.report("cohomology", "input-validation", pre);
                return out.exit_code();
            }
            CohomologyContext c(std::move(s));
            if (d_cls->parsed()) {
                auto reps = classify_deformations(c);
                std::cout << "dim H^2 = " << reps.size() << "\n";
                out.line("PASS", "cohomology", "deform-classify",
                         "classes=" + std::to_string(reps.size()));
            } else {
                Direction d = load_spec(file2).to_direction(c);
                InfinitesimalReport r = check_infinitesimal(c, d);
                out.verdict("cohomology", "deform:mod-t2", r.deformation_mod_t2, "axioms fail");
                out.verdict("cohomology", "deform:cocycle", r.is_cocycle, "not a 2-cocycle");
                out.verdict("cohomology", "deform:agreement",
                            r.deformation_mod_t2 == r.is_cocycle, "theorem violated");
            }
            return out.exit_code();
        }

        if (mc_cmd->parsed()) {
            SpecFile sf = load_spec(file);
            RAvgSpec s = sf.to_ravg();
            const std::string what = mc_cmd->get_subcommands().front()->get_name();
            if (what == "operator") {
                RAvgContext ctx(s);
                Cochain defect = ctx.mc_operator();
                out.verdict("complexes", "mc-operator", defect.is_zero(),
                            "defect:\n" + dump_cochain(defect));
            } else {
                LInfElement defect = mc_pair_check(s);
                out.verdict("linfty", "mc-pair", defect.is_zero(), "nonzero defect");
            }
            return out.exit_code();
        }

        if (linf_cmd->parsed()) {
            RAvgSpec s = load_spec(file).to_ravg();
            VData v(s);
            // canonical sample set: pi, P, and two derived elements
            std::vector<LInfElement> samples;
            LInfElement a, b, c2, d2;
            a.h = v.ctx().pi_lambda();
            b.a = v.ctx().p_embedded();
            c2.a = v.p(bracket(v.ctx().pi_lambda(), v.ctx().p_embedded()));
            d2.h = bracket(v.ctx().pi_lambda(), v.ctx().pi_lambda());
            samples.push_back(a);
            samples.push_back(b);
            if (!c2.a.is_zero()) samples.push_back(c2);
            if (!d2.h.is_zero()) samples.push_back(d2);
            while (samples.size() < 4) samples.push_back(b);
            out.report("linfty", "higher-jacobi", v.higher_jacobi(samples, maxn_arg));
            return out.exit_code();
        }

        if (free_cmd->parsed()) {
            std::vector<std::string> alphabet = split_csv(alphabet_flag);
            if (f_norm->parsed()) {
                WordPoly p = WordPoly::of(parse_word(expr, alphabet));
                WordPoly nf = normal_form(p, Rat::parse(weight_flag));
                for (const auto& [w, c] : nf.terms())
                    std::cout << c.str() << " * " << w.str(alphabet) << "\n";
            } else if (f_enum->parsed()) {
                auto ws = enumerate_words(int(alphabet.size()), maxlen_arg, maxdepth_arg);
                for (const auto& w : ws) std::cout << w.str(alphabet) << "\n";
                std::cout << ws.size() << " words\n";
            } else {
                SpecFile sf = load_spec(file);
                if (!sf.assoc || !sf.op) throw std::invalid_argument("needs assoc and operator");
                Rat w = weight_flag.empty() ? (sf.weight ? *sf.weight : Rat(1))
                                            : Rat::parse(weight_flag);
                Report avg = check_averaging(*sf.assoc, *sf.op, w);
                if (!avg.ok()) {
                    out.report("operators", "averaging", avg);
                    return 1;
                }
                if (image_flags.size() != alphabet.size())
                    throw std::invalid_argument("need one --image per generator");
                std::vector<RatVector> images;
                for (const auto& s : image_flags) {
                    RatVector v = parse_vec(s);
                    if (int(v.size()) != sf.assoc->dim)
                        throw std::invalid_argument("image vector has wrong dimension");
                    images.push_back(std::move(v));
                }
                WordPoly p = WordPoly::of(parse_word(expr, alphabet));
                RatVector direct = evaluate_poly(p, *sf.assoc, *sf.op, images);
                RatVector via_nf = evaluate_poly(normal_form(p, w), *sf.assoc, *sf.op, images);
                std::cout << vec_str(direct) << "\n";
                out.verdict("free", "normalization-soundness", direct == via_nf,
                            "evaluation does not factor through the normal form");
            }
            return out.exit_code();
        }

        if (h_cmd->parsed()) {
            SpecFile sf = load_spec(file);
            const std::string what = h_cmd->get_subcommands().front()->get_name();
            if (what == "ainf") {
                auto it = sf.gspaces.find("D");
                if (it == sf.gspaces.end()) throw std::invalid_argument("needs gspace D");
                out.report("homotopy", "ainf", ainf_check(sf.bind_ops("mu", it->second), maxn_arg));
            } else if (what == "triassinf") {
                auto it = sf.gspaces.find("D");
                if (it == sf.gspaces.end()) throw std::invalid_argument("needs gspace D");
                HFamily pi = sf.bind_ops("pi", it->second);
                Report r = triassinf_check(pi, maxn_arg);
                out.report("homotopy", "triassinf", r);
                out.report("homotopy", "diassinf-fragment", diassinf_subreport(r, maxn_arg));
            } else {
                auto ia = sf.gspaces.find("A"), ib = sf.gspaces.find("B");
                if (ia == sf.gspaces.end() || ib == sf.gspaces.end())
                    throw std::invalid_argument("needs gspace A and gspace B");
                AInfRep rep;
                rep.space_a = ia->second;
                rep.space_b = ib->second;
                rep.ops = sf.bind_ops("ops", GradedSpace::sum(rep.space_a, rep.space_b));
                if (!sf.weight) throw std::invalid_argument("needs a weight");
                HomotopyOperator p;
                p.components = HFamily(rep.ops.space(), 0, true, 6);
                auto po = sf.gops.find("P");
                if (po == sf.gops.end()) throw std::invalid_argument("needs gops P");
                for (const auto& [k, v] : po->second.entries) p.components.add(k, v);
                HomotopyDefect d = homotopy_operator_check(rep, *sf.weight, p);
                out.verdict("homotopy", "operator-defect", d.defect.is_zero(), "nonzero defect");
                if (d.defect.is_zero())
                    out.report("homotopy", "induced-triassinf",
                               triassinf_check(d.induced_on_b, 3));
            }
            return out.exit_code();
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
