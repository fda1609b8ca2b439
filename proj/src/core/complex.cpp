#include "complex.hpp"
#include "lp.hpp"

#include <cmath>
#include <map>
#include <random>
#include <set>

namespace hdl {

Simplex Component::embed_simplex(int t) const {
    Simplex s;
    for (int k = 0; k < 4; ++k) s.v.push_back(embed[cx.tets[t][k]]);
    return s;
}

Simplex Component::domain_simplex(int t) const {
    Simplex s;
    for (int k = 0; k < 4; ++k) s.v.push_back(domain[cx.tets[t][k]]);
    return s;
}

Simplex Component::projected_simplex(int t) const {
    Simplex s;
    for (int k = 0; k < 4; ++k) {
        const Pt& p = embed[cx.tets[t][k]];
        s.v.emplace_back(p.begin(), p.end() - 1);
    }
    return s;
}

int Component::shared_vertex_count(int t1, int t2) const {
    int n = 0;
    for (int a : cx.tets[t1])
        for (int b : cx.tets[t2])
            if (a == b) ++n;
    return n;
}

BBox bbox_of(const Simplex& s) {
    BBox b;
    const int d = s.ambient();
    b.lo.assign(d, 1e308);
    b.hi.assign(d, -1e308);
    for (const auto& p : s.v)
        for (int i = 0; i < d; ++i) {
            b.lo[i] = std::min(b.lo[i], lower_double(p[i]));
            b.hi[i] = std::max(b.hi[i], upper_double(p[i]));
        }
    return b;
}

namespace {

std::vector<double> dvec(const Pt& p) {
    std::vector<double> out(p.size());
    for (size_t i = 0; i < p.size(); ++i) out[i] = p[i].convert_to<double>();
    return out;
}

// Homogeneous separation in doubles: find v with v.a > 0 for all a in A and
// v.b < 0 for all b in B (perceptron with a centroid warm start). The result
// is only a guess; callers verify it exactly.
bool separate_homog(const std::vector<std::vector<double>>& A0,
                    const std::vector<std::vector<double>>& B0,
                    std::vector<double>& v) {
    if (A0.empty() && B0.empty()) return false;
    const size_t d = A0.empty() ? B0[0].size() : A0[0].size();
    auto norm = [&](const std::vector<double>& x) {
        double s = 0;
        for (double c : x) s += c * c;
        return std::sqrt(s);
    };
    // Signed, unit-normalized training points: need v.z > 0 for all of them.
    std::vector<std::vector<double>> pts;
    for (const auto& a : A0) {
        double n = norm(a);
        if (n == 0) return false;
        auto z = a;
        for (double& c : z) c /= n;
        pts.push_back(std::move(z));
    }
    for (const auto& b : B0) {
        double n = norm(b);
        if (n == 0) return false;
        auto z = b;
        for (double& c : z) c /= -n;
        pts.push_back(std::move(z));
    }
    v.assign(d, 0.0);
    for (const auto& z : pts)
        for (size_t i = 0; i < d; ++i) v[i] += z[i];
    for (int iter = 0; iter < 2000; ++iter) {
        const std::vector<double>* worst = nullptr;
        double wmargin = 1e30;
        double vn = norm(v) + 1e-300;
        for (const auto& z : pts) {
            double s = 0;
            for (size_t i = 0; i < d; ++i) s += v[i] * z[i];
            if (s / vn < wmargin) { wmargin = s / vn; worst = &z; }
        }
        if (wmargin > 1e-9) return true;
        for (size_t i = 0; i < d; ++i) v[i] += (*worst)[i];
    }
    return false;
}

std::vector<Rat> snap(const std::vector<double>& v) {
    double mx = 0;
    for (double c : v) mx = std::max(mx, std::fabs(c));
    if (mx == 0 || !std::isfinite(mx)) return {};
    std::vector<Rat> out(v.size());
    const double scale = 1048576.0 / mx; // denominator 2^20 after normalizing
    for (size_t i = 0; i < v.size(); ++i)
        out[i] = Rat((long long)std::llround(v[i] * scale), 1048576LL);
    return out;
}

// Exact disjointness certificate from a guessed direction:
// min over S of w.x  >  max over T of w.x.
bool certify_disjoint(const Simplex& S, const Simplex& T,
                      std::vector<std::vector<double>> A,
                      std::vector<std::vector<double>> B) {
    const size_t d = S.v[0].size();
    // Work in centered, rescaled coordinates so the angular separation margin
    // reflects the local geometry, not the global position.
    std::vector<double> mid(d, 0.0);
    for (const auto& x : A) for (size_t i = 0; i < d; ++i) mid[i] += x[i];
    for (const auto& x : B) for (size_t i = 0; i < d; ++i) mid[i] += x[i];
    for (double& c : mid) c /= (double)(A.size() + B.size());
    double spread = 0;
    for (auto* set : {&A, &B})
        for (auto& x : *set)
            for (size_t i = 0; i < d; ++i) {
                x[i] -= mid[i];
                spread = std::max(spread, std::fabs(x[i]));
            }
    if (spread == 0 || !std::isfinite(spread)) return false;
    for (auto* set : {&A, &B})
        for (auto& x : *set) {
            for (double& c : x) c /= spread;
            x.push_back(1.0);
        }
    std::vector<double> v;
    if (!separate_homog(A, B, v)) return false;
    v.pop_back(); // the bias only steered the search
    auto w = snap(v);
    if (w.empty()) return false;
    bool first = true;
    Rat minS = 0, maxT = 0;
    for (const auto& p : S.v) {
        Rat s = 0;
        for (size_t i = 0; i < d; ++i) s += w[i] * p[i];
        if (first || s < minS) minS = s;
        first = false;
    }
    first = true;
    for (const auto& p : T.v) {
        Rat s = 0;
        for (size_t i = 0; i < d; ++i) s += w[i] * p[i];
        if (first || s > maxT) maxT = s;
        first = false;
    }
    return maxT < minS;
}

// Exact cleanliness certificate for simplices sharing a face: a functional
// exactly constant on the shared vertices, strictly above that value on the
// other S vertices and strictly below it on the other T vertices. Such a
// functional pins the intersection of the convex bodies to the shared face.
bool certify_clean(const Simplex& S, const Simplex& T,
                   const std::vector<std::vector<double>>& Sd,
                   const std::vector<std::vector<double>>& Td,
                   const std::vector<bool>& s_shared,
                   const std::vector<bool>& t_shared, int s0) {
    const size_t d = S.v[0].size();
    // Exact basis of { w : w.(s_i - s_{s0}) = 0 for all shared i }.
    Mat D;
    for (size_t i = 0; i < S.v.size(); ++i)
        if (s_shared[i] && (int)i != s0) D.push_back(sub(S.v[i], S.v[s0]));
    std::vector<Vec> K;
    if (D.empty()) {
        for (size_t i = 0; i < d; ++i) {
            Vec e(d, Rat(0));
            e[i] = 1;
            K.push_back(e);
        }
    } else {
        auto sol = solve_affine(D, std::vector<Rat>(D.size(), Rat(0)));
        if (!sol || sol->kernel.empty()) return false;
        K = sol->kernel;
    }
    // Coordinates of the off-face vertices against the basis, in doubles.
    std::vector<std::vector<double>> Kd;
    for (const auto& k : K) Kd.push_back(dvec(k));
    auto coords = [&](const std::vector<double>& p) {
        std::vector<double> out(K.size(), 0.0);
        for (size_t j = 0; j < K.size(); ++j)
            for (size_t i = 0; i < d; ++i)
                out[j] += Kd[j][i] * (p[i] - Sd[s0][i]);
        return out;
    };
    std::vector<std::vector<double>> A, B;
    for (size_t i = 0; i < S.v.size(); ++i)
        if (!s_shared[i]) A.push_back(coords(Sd[i]));
    for (size_t j = 0; j < T.v.size(); ++j)
        if (!t_shared[j]) B.push_back(coords(Td[j]));
    double spread = 0;
    for (auto* set : {&A, &B})
        for (auto& x : *set)
            for (double c : x) spread = std::max(spread, std::fabs(c));
    if (spread == 0 || !std::isfinite(spread)) return false;
    for (auto* set : {&A, &B})
        for (auto& x : *set)
            for (double& c : x) c /= spread;
    std::vector<double> v;
    if (!separate_homog(A, B, v)) return false;
    auto vq = snap(v);
    if (vq.empty()) return false;
    Vec w(d, Rat(0));
    for (size_t j = 0; j < K.size(); ++j)
        for (size_t i = 0; i < d; ++i) w[i] += vq[j] * K[j][i];
    // Exact verification; w is constant on the shared face by construction.
    Rat c = 0;
    for (size_t i = 0; i < d; ++i) c += w[i] * S.v[s0][i];
    for (size_t i = 0; i < S.v.size(); ++i) {
        if (s_shared[i]) continue;
        Rat s = 0;
        for (size_t k = 0; k < d; ++k) s += w[k] * S.v[i][k];
        if (s <= c) return false;
    }
    for (size_t j = 0; j < T.v.size(); ++j) {
        if (t_shared[j]) continue;
        Rat s = 0;
        for (size_t k = 0; k < d; ++k) s += w[k] * T.v[j][k];
        if (s >= c) return false;
    }
    return true;
}

} // namespace

namespace {

bool adjacent_pair_clean_impl(const Simplex& S, const Simplex& T,
                              const std::vector<std::pair<int, int>>& shared,
                              const std::vector<std::vector<double>>& Sd,
                              const std::vector<std::vector<double>>& Td) {
    const int d = S.ambient();
    const int ns = (int)S.v.size(), nt = (int)T.v.size();
    std::vector<bool> s_shared(ns, false), t_shared(nt, false);
    for (auto [a, b] : shared) { s_shared[a] = true; t_shared[b] = true; }

    // Fast path: guessed separating functional through the shared face,
    // verified exactly. Covers the vast majority of adjacent pairs.
    if (certify_clean(S, T, Sd, Td, s_shared, t_shared, shared[0].first))
        return true;

    // Fast path: if the union of vertices is affinely independent, the two
    // simplices are faces of one big simplex and intersect exactly in the
    // shared face.
    std::vector<Pt> uni = S.v;
    for (int j = 0; j < nt; ++j)
        if (!t_shared[j]) uni.push_back(T.v[j]);
    {
        Mat m;
        for (size_t i = 1; i < uni.size(); ++i) m.push_back(sub(uni[i], uni[0]));
        if (rank(m) == (int)uni.size() - 1) return true;
    }

    // Face-sharing tetrahedra S = conv(W,a), T = conv(W,b): if b lies in the
    // affine hull of (W,a) with a-coefficient strictly negative, the bodies
    // are on opposite sides of the shared plane and meet exactly in W.
    if ((int)shared.size() == ns - 1 && (int)shared.size() == nt - 1 && ns == nt) {
        int ai = 0, bi = 0;
        for (int i = 0; i < ns; ++i) if (!s_shared[i]) ai = i;
        for (int j = 0; j < nt; ++j) if (!t_shared[j]) bi = j;
        Mat A(d + 1, std::vector<Rat>(ns, Rat(0)));
        std::vector<Rat> rhs(d + 1, Rat(0));
        for (int r = 0; r < d; ++r) {
            for (int i = 0; i < ns; ++i) A[r][i] = S.v[i][r];
            rhs[r] = T.v[bi][r];
        }
        for (int i = 0; i < ns; ++i) A[d][i] = 1;
        rhs[d] = 1;
        if (auto sol = solve_affine(A, rhs)) {
            if (sol->kernel.empty() && sol->particular[ai] < 0) return true;
            return false; // coplanar overlap or b in the shared plane
        }
    }

    // Axis-aligned separating hyperplane through the shared face: common in
    // the structured grid regions (flat facets, aprons, collars), where the
    // rank fast path never fires.
    for (int axis = 0; axis < d; ++axis) {
        const Rat& w = S.v[shared[0].first][axis];
        bool flat = true;
        for (auto [a, b] : shared)
            if (S.v[a][axis] != w || T.v[b][axis] != w) { flat = false; break; }
        if (!flat) continue;
        int s_sign = 0, t_sign = 0;
        bool strict = true;
        for (int i = 0; i < ns && strict; ++i) {
            if (s_shared[i]) continue;
            int sg = sgn(S.v[i][axis] - w);
            if (sg == 0 || (s_sign != 0 && sg != s_sign)) strict = false;
            s_sign = sg;
        }
        for (int j = 0; j < nt && strict; ++j) {
            if (t_shared[j]) continue;
            int sg = sgn(T.v[j][axis] - w);
            if (sg == 0 || (t_sign != 0 && sg != t_sign)) strict = false;
            t_sign = sg;
        }
        if (strict && s_sign != 0 && t_sign == -s_sign) return true;
    }

    // Exact fallback: the intersection polytope equals the shared face iff
    // the total weight on non-shared vertices cannot be made positive.
    const int nvars = ns + nt;
    Mat A(d + 2, std::vector<Rat>(nvars, Rat(0)));
    std::vector<Rat> b(d + 2, Rat(0));
    for (int r = 0; r < d; ++r) {
        for (int i = 0; i < ns; ++i) A[r][i] = S.v[i][r];
        for (int j = 0; j < nt; ++j) A[r][ns + j] = -T.v[j][r];
    }
    for (int i = 0; i < ns; ++i) A[d][i] = 1;
    for (int j = 0; j < nt; ++j) A[d + 1][ns + j] = 1;
    b[d] = 1;
    b[d + 1] = 1;
    std::vector<Rat> c(nvars, Rat(0));
    for (int i = 0; i < ns; ++i) if (!s_shared[i]) c[i] = 1;
    for (int j = 0; j < nt; ++j) if (!t_shared[j]) c[ns + j] = 1;
    auto mx = lp_max(A, b, c);
    return mx && *mx == 0;
}

} // namespace

bool disjoint_simplices(const Simplex& S, const Simplex& T) {
    if (!bbox_of(S).overlaps(bbox_of(T))) return true;
    std::vector<std::vector<double>> Sd, Td;
    for (const auto& p : S.v) Sd.push_back(dvec(p));
    for (const auto& p : T.v) Td.push_back(dvec(p));
    if (certify_disjoint(S, T, Sd, Td)) return true;
    return intersect_simplices(S, T).kind == Isect::Kind::Empty;
}

bool adjacent_pair_clean(const Simplex& S, const Simplex& T,
                         const std::vector<std::pair<int, int>>& shared) {
    std::vector<std::vector<double>> Sd, Td;
    for (const auto& p : S.v) Sd.push_back(dvec(p));
    for (const auto& p : T.v) Td.push_back(dvec(p));
    return adjacent_pair_clean_impl(S, T, shared, Sd, Td);
}

namespace {

int perm_parity3(std::array<int, 3> a) {
    int swaps = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (a[i] > a[j]) { std::swap(a[i], a[j]); ++swaps; }
    return swaps % 2 == 0 ? 1 : -1;
}

struct UF {
    std::vector<int> p;
    explicit UF(int n) : p(n) { for (int i = 0; i < n; ++i) p[i] = i; }
    int find(int x) { while (p[x] != x) x = p[x] = p[p[x]]; return x; }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

void validate_component_combinatorics(const Component& comp, int ci,
                                      ValidationReport& rep) {
    const auto& cx = comp.cx;
    const std::string tag = "component " + std::to_string(ci) + ": ";
    if (cx.ell != 2) rep.fail(tag + "only l=2 is computational");
    if ((int)comp.domain.size() != cx.vertex_count ||
        (int)comp.embed.size() != cx.vertex_count) {
        rep.fail(tag + "vertex coordinate arrays do not match vertex count");
        return;
    }
    if ((int)cx.orient.size() != (int)cx.tets.size()) {
        rep.fail(tag + "orientation array size mismatch");
        return;
    }
    for (size_t t = 0; t < cx.tets.size(); ++t) {
        const auto& tet = cx.tets[t];
        for (int v : tet)
            if (v < 0 || v >= cx.vertex_count)
                rep.fail(tag + "tet " + std::to_string(t) + " vertex out of range");
        std::set<int> distinct(tet.begin(), tet.end());
        if (distinct.size() != 4)
            rep.fail(tag + "tet " + std::to_string(t) + " has repeated vertices");
        if (cx.orient[t] != 1 && cx.orient[t] != -1)
            rep.fail(tag + "tet " + std::to_string(t) + " orientation not +-1");
    }
    if (!rep.ok) return;

    // Face coherence: every triangle in exactly two tets, with opposite
    // induced orientations; connectivity via shared faces; Euler char 0.
    std::map<std::array<int, 3>, std::vector<std::pair<int, int>>> faces;
    for (size_t t = 0; t < cx.tets.size(); ++t) {
        const auto& tet = cx.tets[t];
        for (int k = 0; k < 4; ++k) {
            std::array<int, 3> f;
            int idx = 0;
            for (int i = 0; i < 4; ++i)
                if (i != k) f[idx++] = tet[i];
            int sign = cx.orient[t] * (k % 2 == 0 ? 1 : -1) * perm_parity3(f);
            std::array<int, 3> key = f;
            std::sort(key.begin(), key.end());
            faces[key].push_back({(int)t, sign});
        }
    }
    // Long components are solid regions of R^3: boundary faces (in exactly
    // one tet) are allowed, but only inside the frozen standard zone.
    const bool is_long = comp.standard.has_value();
    UF uf((int)cx.tets.size());
    size_t boundary_faces = 0;
    for (const auto& [key, inc] : faces) {
        if (inc.size() == 1 && is_long) {
            ++boundary_faces;
            for (int v : key) {
                Rat supn = 0;
                for (const auto& c : comp.domain[v]) supn = rmax(supn, rabs(c));
                if (supn < comp.standard->interior_radius) {
                    rep.fail(tag + "boundary face {" + std::to_string(key[0]) +
                             "," + std::to_string(key[1]) + "," +
                             std::to_string(key[2]) +
                             "} reaches inside the standard radius");
                    break;
                }
            }
            continue;
        }
        if (inc.size() != 2) {
            rep.fail(tag + "face {" + std::to_string(key[0]) + "," +
                     std::to_string(key[1]) + "," + std::to_string(key[2]) +
                     "} lies in " + std::to_string(inc.size()) + " tets");
            continue;
        }
        if (inc[0].second + inc[1].second != 0)
            rep.fail(tag + "orientation incoherence at face {" +
                     std::to_string(key[0]) + "," + std::to_string(key[1]) + "," +
                     std::to_string(key[2]) + "}");
        uf.unite(inc[0].first, inc[1].first);
    }
    if (!cx.tets.empty()) {
        int root = uf.find(0);
        for (size_t t = 1; t < cx.tets.size(); ++t)
            if (uf.find((int)t) != root) {
                rep.fail(tag + "complex is not connected");
                break;
            }
    }
    std::set<int> verts_used;
    std::set<std::array<int, 2>> edges;
    for (const auto& tet : cx.tets) {
        for (int v : tet) verts_used.insert(v);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                edges.insert({std::min(tet[i], tet[j]), std::max(tet[i], tet[j])});
    }
    long euler = (long)verts_used.size() - (long)edges.size() +
                 (long)faces.size() - (long)cx.tets.size();
    const long want_euler = is_long ? 1 : 0; // solid ball vs closed 3-manifold
    if (euler != want_euler)
        rep.fail(tag + "Euler characteristic " + std::to_string(euler) +
                 " != " + std::to_string(want_euler));
    if (is_long && boundary_faces == 0)
        rep.fail(tag + "long component has no boundary faces");

    // Geometric nondegeneracy of every tet, in domain and ambient coordinates.
    for (size_t t = 0; t < cx.tets.size(); ++t) {
        for (const auto* which : {&comp.domain, &comp.embed}) {
            Mat m;
            for (int k = 1; k < 4; ++k)
                m.push_back(sub((*which)[cx.tets[t][k]], (*which)[cx.tets[t][0]]));
            if (rank(m) != 3) {
                rep.fail(tag + "tet " + std::to_string(t) + " degenerate");
                break;
            }
        }
    }
}

// Pairwise injectivity of the linear-on-simplices map given by `pts`.
// Pairs are (component, tet); same-component adjacent pairs must meet exactly
// in their shared face, all other pairs must be disjoint.
void check_injectivity(const SimplicialLink& link,
                       const std::vector<std::vector<Pt>*>& pts_per_comp,
                       bool cross_components,
                       const std::vector<std::set<int>>* moved,
                       const char* what, ValidationReport& rep) {
    struct Entry { int ci, t; BBox box; bool moved; };
    std::vector<Entry> entries;
    for (size_t ci = 0; ci < link.comps.size(); ++ci) {
        const auto& comp = link.comps[ci];
        const auto& pts = *pts_per_comp[ci];
        for (size_t t = 0; t < comp.cx.tets.size(); ++t) {
            Simplex s;
            bool mv = moved == nullptr;
            for (int k = 0; k < 4; ++k) {
                int v = comp.cx.tets[t][k];
                s.v.push_back(pts[v]);
                if (moved && (*moved)[ci].count(v)) mv = true;
            }
            entries.push_back({(int)ci, (int)t, bbox_of(s), mv});
        }
    }
    // Per-vertex double coordinates, converted once; the exact coordinates
    // stay authoritative, the doubles only steer the separation guesses.
    std::vector<std::vector<std::vector<double>>> dpts(link.comps.size());
    for (size_t ci = 0; ci < link.comps.size(); ++ci)
        for (const auto& p : *pts_per_comp[ci])
            dpts[ci].push_back(dvec(p));
    auto simplex_of = [&](const Entry& e) {
        Simplex s;
        for (int k = 0; k < 4; ++k)
            s.v.push_back((*pts_per_comp[e.ci])[link.comps[e.ci].cx.tets[e.t][k]]);
        return s;
    };
    auto dbl_of = [&](const Entry& e) {
        std::vector<std::vector<double>> s;
        for (int k = 0; k < 4; ++k)
            s.push_back(dpts[e.ci][link.comps[e.ci].cx.tets[e.t][k]]);
        return s;
    };
    for (size_t i = 0; i < entries.size() && rep.ok; ++i) {
        for (size_t j = i + 1; j < entries.size(); ++j) {
            const Entry& a = entries[i];
            const Entry& b = entries[j];
            if (!cross_components && a.ci != b.ci) continue;
            if (moved && !a.moved && !b.moved) continue;
            if (!a.box.overlaps(b.box)) continue;
            if (a.ci == b.ci) {
                const auto& ta = link.comps[a.ci].cx.tets[a.t];
                const auto& tb = link.comps[b.ci].cx.tets[b.t];
                std::vector<std::pair<int, int>> shared;
                for (int x = 0; x < 4; ++x)
                    for (int y = 0; y < 4; ++y)
                        if (ta[x] == tb[y]) shared.push_back({x, y});
                if (!shared.empty()) {
                    if (!adjacent_pair_clean_impl(simplex_of(a), simplex_of(b),
                                                  shared, dbl_of(a), dbl_of(b))) {
                        rep.fail(std::string(what) + ": component " +
                                 std::to_string(a.ci) + " tets " +
                                 std::to_string(a.t) + "," + std::to_string(b.t) +
                                 " overlap beyond their shared face");
                        if (!rep.ok) break;
                    }
                    continue;
                }
            }
            Simplex sa = simplex_of(a), sb = simplex_of(b);
            if (certify_disjoint(sa, sb, dbl_of(a), dbl_of(b))) continue;
            auto r = intersect_simplices(sa, sb);
            if (r.kind != Isect::Kind::Empty) {
                rep.fail(std::string(what) + ": components " +
                         std::to_string(a.ci) + "/" + std::to_string(b.ci) +
                         " tets " + std::to_string(a.t) + "," +
                         std::to_string(b.t) + " intersect");
                if (!rep.ok) break;
            }
        }
    }
}

} // namespace

ValidationReport validate(const SimplicialLink& link) {
    ValidationReport rep;
    // A link may mix spherical components (domain in R^4) with long ones
    // (domain in R^3, standard outside a box): the component kind is read
    // off the presence of the standard-inclusion data.
    bool any_long = false;
    for (const auto& comp : link.comps) any_long |= comp.standard.has_value();
    if (link.kind == LinkKind::long_knot && !any_long)
        rep.fail("long link without any standard-inclusion data");
    if (link.kind == LinkKind::spherical && any_long)
        rep.fail("spherical link carries standard-inclusion data");
    for (size_t ci = 0; ci < link.comps.size(); ++ci) {
        const auto& comp = link.comps[ci];
        const int domain_dim = comp.standard ? 3 : 4;
        const std::string tag = "component " + std::to_string(ci) + ": ";
        for (const auto& p : comp.domain)
            if ((int)p.size() != domain_dim)
                { rep.fail(tag + "domain vertex dimension != " + std::to_string(domain_dim)); break; }
        for (const auto& p : comp.embed)
            if ((int)p.size() != 6)
                { rep.fail(tag + "ambient vertex dimension != 6"); break; }
        if (!rep.ok) return rep;
        validate_component_combinatorics(comp, (int)ci, rep);
        if (comp.standard) {
            const auto& st = *comp.standard;
            for (int v = 0; v < comp.cx.vertex_count; ++v) {
                Rat supn = 0;
                for (const auto& c : comp.domain[v]) supn = rmax(supn, rabs(c));
                if (supn < st.interior_radius) continue;
                for (int r = 0; r < 6; ++r) {
                    Rat want = st.off[r];
                    for (int c = 0; c < 3; ++c) want += st.lin[r][c] * comp.domain[v][c];
                    if (comp.embed[v][r] != want) {
                        rep.fail(tag + "vertex " + std::to_string(v) +
                                 " outside the box is not standard");
                        break;
                    }
                }
            }
        }
    }
    if (!rep.ok) return rep;

    // Ambient embedding: all components together.
    std::vector<std::vector<Pt>*> embeds, domains;
    for (auto& comp : const_cast<SimplicialLink&>(link).comps) {
        embeds.push_back(&comp.embed);
        domains.push_back(&comp.domain);
    }
    check_injectivity(link, embeds, true, nullptr, "ambient embedding", rep);
    if (!rep.ok) return rep;
    // Domain realization embedding: per component.
    check_injectivity(link, domains, false, nullptr, "domain realization", rep);
    return rep;
}

ValidationReport validate_embedding(const SimplicialLink& link,
                                    const std::vector<std::set<int>>& moved,
                                    bool check_all) {
    ValidationReport rep;
    std::vector<std::vector<Pt>*> embeds;
    for (auto& comp : const_cast<SimplicialLink&>(link).comps)
        embeds.push_back(&comp.embed);
    check_injectivity(link, embeds, true, check_all ? nullptr : &moved,
                      "ambient embedding", rep);
    return rep;
}

namespace {

// Children of the red (1->8) subdivision in local indices 0..3 (corners) and
// 4..9 (edge midpoints m01,m02,m03,m12,m13,m23), diagonal m01-m23.
constexpr int kEdgePairs[6][2] = {{0,1},{0,2},{0,3},{1,2},{1,3},{2,3}};
constexpr int kChildren[8][4] = {
    {0, 4, 5, 6}, {1, 4, 7, 8}, {2, 5, 7, 9}, {3, 6, 8, 9},
    {4, 9, 5, 7}, {4, 9, 7, 8}, {4, 9, 8, 6}, {4, 9, 6, 5},
};

} // namespace

SimplicialLink refine_once(const SimplicialLink& link) {
    SimplicialLink out = link;
    // Reference orientation signs of the child pattern, computed once in the
    // standard tetrahedron.
    static const std::vector<int> child_sign = [] {
        std::vector<Pt> ref = {{Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(0)},
                               {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}};
        std::vector<Pt> loc = ref;
        for (auto [a, b] : kEdgePairs)
            loc.push_back(lerp(ref[a], ref[b], Rat(1, 2)));
        std::vector<int> signs;
        for (const auto& ch : kChildren)
            signs.push_back(orientation_sign({loc[ch[0]], loc[ch[1]], loc[ch[2]], loc[ch[3]]}));
        return signs;
    }();

    for (auto& comp : out.comps) {
        std::map<std::array<int, 2>, int> midpoint;
        AbstractComplex nc;
        nc.ell = comp.cx.ell;
        std::vector<Pt> ndom = comp.domain, nemb = comp.embed;
        auto mid = [&](int a, int b) {
            std::array<int, 2> key{std::min(a, b), std::max(a, b)};
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            int id = (int)ndom.size();
            ndom.push_back(lerp(comp.domain[a], comp.domain[b], Rat(1, 2)));
            nemb.push_back(lerp(comp.embed[a], comp.embed[b], Rat(1, 2)));
            midpoint[key] = id;
            return id;
        };
        for (size_t t = 0; t < comp.cx.tets.size(); ++t) {
            const auto& tet = comp.cx.tets[t];
            int loc[10];
            for (int k = 0; k < 4; ++k) loc[k] = tet[k];
            for (int e = 0; e < 6; ++e)
                loc[4 + e] = mid(tet[kEdgePairs[e][0]], tet[kEdgePairs[e][1]]);
            for (int ch = 0; ch < 8; ++ch) {
                nc.tets.push_back({loc[kChildren[ch][0]], loc[kChildren[ch][1]],
                                   loc[kChildren[ch][2]], loc[kChildren[ch][3]]});
                nc.orient.push_back(comp.cx.orient[t] * child_sign[ch]);
            }
        }
        nc.vertex_count = (int)ndom.size();
        comp.cx = std::move(nc);
        comp.domain = std::move(ndom);
        comp.embed = std::move(nemb);
    }
    return out;
}

SimplicialLink refine(const SimplicialLink& link, const Rat& target_edge_length) {
    SimplicialLink out = link;
    for (int round = 0; round < 16; ++round) {
        Rat longest = 0;
        for (const auto& comp : out.comps) {
            std::set<std::array<int, 2>> edges;
            for (const auto& tet : comp.cx.tets)
                for (int i = 0; i < 4; ++i)
                    for (int j = i + 1; j < 4; ++j)
                        edges.insert({std::min(tet[i], tet[j]), std::max(tet[i], tet[j])});
            for (const auto& e : edges) {
                Vec d = sub(comp.embed[e[0]], comp.embed[e[1]]);
                for (const auto& c : d) longest = rmax(longest, rabs(c));
            }
        }
        if (longest < target_edge_length) return out;
        out = refine_once(out);
    }
    throw Error(ErrorCode::InvalidInput, "refine: too many subdivision rounds");
}

SimplicialLink perturb(const SimplicialLink& link, const Rat& magnitude,
                       uint64_t seed) {
    if (magnitude == 0) return link;
    if (magnitude < 0)
        throw Error(ErrorCode::InvalidInput, "perturb: negative magnitude");
    SimplicialLink out = link;
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x2545F4914F6CDD1DULL);
    std::vector<std::set<int>> moved(out.comps.size());
    const long denom = 1 << 20;
    for (size_t ci = 0; ci < out.comps.size(); ++ci) {
        auto& comp = out.comps[ci];
        for (int v = 0; v < comp.cx.vertex_count; ++v) {
            if (comp.standard) {
                Rat supn = 0;
                for (const auto& c : comp.domain[v]) supn = rmax(supn, rabs(c));
                if (supn >= comp.standard->interior_radius) continue;
            }
            bool any = false;
            for (int r = 0; r < 6; ++r) {
                long num = (long)(rng() % (2 * denom + 1)) - denom;
                if (num == 0) continue;
                comp.embed[v][r] += magnitude * Rat(num, denom);
                any = true;
            }
            if (any) moved[ci].insert(v);
        }
    }
    auto full = validate(out);
    if (!full.ok)
        throw Error(ErrorCode::PerturbationTooLarge,
                    "perturb: result invalid: " + full.problems.front());
    // Isotopy certificate on the dyadic grid t = k/16.
    for (int k = 1; k < 16; ++k) {
        SimplicialLink interp = link;
        Rat t(k, 16);
        for (size_t ci = 0; ci < out.comps.size(); ++ci)
            for (int v : moved[ci])
                interp.comps[ci].embed[v] =
                    lerp(link.comps[ci].embed[v], out.comps[ci].embed[v], t);
        auto rep = validate_embedding(interp, moved, false);
        if (!rep.ok)
            throw Error(ErrorCode::PerturbationTooLarge,
                        "perturb: isotopy certificate fails at t=" +
                            std::to_string(k) + "/16: " + rep.problems.front());
    }
    return out;
}

SimplicialLink reverse_component(const SimplicialLink& link, int i) {
    if (i < 0 || i >= (int)link.comps.size())
        throw Error(ErrorCode::InvalidInput, "reverse_component: index out of range");
    SimplicialLink out = link;
    for (auto& o : out.comps[i].cx.orient) o = -o;
    return out;
}

SimplicialLink shear_projection(const SimplicialLink& link, int index) {
    if (index < 0 || index >= 5)
        throw Error(ErrorCode::InvalidInput,
                    "shear_projection: index must be in [0, 5)");
    // u_index += u6 / 8: volume-preserving, isotopic to the identity, and
    // changes the direction along which the projection drops the last
    // coordinate. The standard inclusions of long components have u6 == 0 on
    // the standard plane, so their rows transform consistently.
    const Rat d(1, 8);
    SimplicialLink out = link;
    for (auto& comp : out.comps) {
        for (auto& p : comp.embed) p[index] += d * p[5];
        if (comp.standard) {
            for (int c = 0; c < 3; ++c)
                comp.standard->lin[index][c] =
                    Rat(comp.standard->lin[index][c] +
                        d * comp.standard->lin[5][c]);
            comp.standard->off[index] =
                Rat(comp.standard->off[index] + d * comp.standard->off[5]);
        }
    }
    return out;
}

SimplicialLink mirror(const SimplicialLink& link) {
    SimplicialLink out = link;
    for (auto& comp : out.comps) {
        for (auto& p : comp.embed) p[5] = -p[5];
        if (comp.standard) {
            for (auto& c : comp.standard->lin[5]) c = -c;
            comp.standard->off[5] = -comp.standard->off[5];
        }
    }
    return out;
}

} // namespace hdl
