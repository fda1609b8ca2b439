#include "generators.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <map>

namespace hdl {

namespace {

constexpr int kPerm3[6][3] = {
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
};

} // namespace

Component product_square_boundary(const Rat& a, const Rat& b) {
    Component comp;
    std::map<std::array<Rat, 4>, int> vid;
    auto vertex = [&](const std::array<Rat, 4>& p) {
        auto it = vid.find(p);
        if (it != vid.end()) return it->second;
        int id = (int)comp.domain.size();
        comp.domain.push_back({p[0], p[1], p[2], p[3]});
        vid[p] = id;
        return id;
    };
    const Rat half[4] = {a, a, b, b};
    for (int fixed = 0; fixed < 4; ++fixed) {
        for (int side : {-1, +1}) {
            // Facet {u_fixed = side * half} as a cuboid over the three free
            // coordinates, in global order.
            int free_axes[3];
            int idx = 0;
            for (int i = 0; i < 4; ++i)
                if (i != fixed) free_axes[idx++] = i;
            std::array<Rat, 4> lo;
            lo[fixed] = Rat(side) * half[fixed];
            for (int k = 0; k < 3; ++k) lo[free_axes[k]] = -half[free_axes[k]];
            // Monotone-path triangulation: walk from the low corner to the
            // high corner, one free axis at a time.
            for (const auto& perm : kPerm3) {
                std::array<int, 4> tet;
                std::array<Rat, 4> p = lo;
                tet[0] = vertex(p);
                for (int step = 0; step < 3; ++step) {
                    int axis = free_axes[perm[step]];
                    p[axis] = half[axis];
                    tet[step + 1] = vertex(p);
                }
                // Outward-first orientation: sign of (outward normal, edges).
                Mat frame;
                Vec n(4, Rat(0));
                n[fixed] = side;
                frame.push_back(n);
                for (int k = 1; k < 4; ++k)
                    frame.push_back(sub(comp.domain[tet[k]], comp.domain[tet[0]]));
                int s = det_sign(frame);
                comp.cx.tets.push_back(tet);
                comp.cx.orient.push_back(s);
            }
        }
    }
    comp.cx.vertex_count = (int)comp.domain.size();
    return comp;
}

Component solid_box_region(const Vec& lo, const Vec& hi, const Rat& cell) {
    if (lo.size() != 3 || hi.size() != 3 || cell <= 0)
        throw Error(ErrorCode::InvalidInput, "solid_box_region: bad box");
    long n[3];
    for (int i = 0; i < 3; ++i) {
        Rat len = (hi[i] - lo[i]) / cell;
        if (len <= 0 || denominator(len) != 1)
            throw Error(ErrorCode::InvalidInput,
                        "solid_box_region: cell must divide every side");
        n[i] = (long)numerator(len);
    }
    Component comp;
    auto vid = [&](long i, long j, long k) {
        return (int)((i * (n[1] + 1) + j) * (n[2] + 1) + k);
    };
    for (long i = 0; i <= n[0]; ++i)
        for (long j = 0; j <= n[1]; ++j)
            for (long k = 0; k <= n[2]; ++k)
                comp.domain.push_back(
                    {lo[0] + i * cell, lo[1] + j * cell, lo[2] + k * cell});
    for (long i = 0; i < n[0]; ++i)
        for (long j = 0; j < n[1]; ++j)
            for (long k = 0; k < n[2]; ++k) {
                long at[3] = {i, j, k};
                for (const auto& perm : kPerm3) {
                    std::array<int, 4> tet;
                    long p[3] = {at[0], at[1], at[2]};
                    tet[0] = vid(p[0], p[1], p[2]);
                    int parity = 1;
                    for (int step = 0; step < 3; ++step) {
                        ++p[perm[step]];
                        tet[step + 1] = vid(p[0], p[1], p[2]);
                    }
                    // Sign of the permutation = orientation of the path tet.
                    parity = (perm[0] == 0 && perm[1] == 1) ||
                                     (perm[0] == 1 && perm[1] == 2) ||
                                     (perm[0] == 2 && perm[1] == 0)
                                 ? 1
                                 : -1;
                    comp.cx.tets.push_back(tet);
                    comp.cx.orient.push_back(parity);
                }
            }
    comp.cx.vertex_count = (int)comp.domain.size();
    return comp;
}

namespace {

// The unimodular change of coordinates v -> (v1-v6, ..., v5-v6, v6): it
// sends the diagonal direction (1,...,1) to e6, so dropping the last
// coordinate afterwards projects along the diagonal.
Mat diagonal_to_last() {
    Mat T(6, Vec(6, Rat(0)));
    for (int r = 0; r < 5; ++r) {
        T[r][r] = 1;
        T[r][5] = -1;
    }
    T[5][5] = 1;
    return T;
}

Mat mat_mul(const Mat& A, const Mat& B) {
    Mat C(A.size(), Vec(B[0].size(), Rat(0)));
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t k = 0; k < B.size(); ++k)
            for (size_t j = 0; j < B[0].size(); ++j)
                C[i][j] += A[i][k] * B[k][j];
    return C;
}

} // namespace

SimplicialLink borromean(const Rat& alpha, const Rat& beta) {
    if (!(beta > 0) || !(2 * beta < alpha))
        throw Error(ErrorCode::ParameterViolation,
                    "borromean: requires 0 < 2*beta < alpha");
    // Block embeddings of the domain coordinates (a,b,c,d), where (a,b) is
    // the alpha-square and (c,d) the beta-square, into R^6 = {(x,y,z)}:
    //   X = { x = 0, y in alpha-square, z in beta-square }
    //   Y = { y = 0, z in alpha-square, x in beta-square }
    //   Z = { z = 0, x in alpha-square, y in beta-square }
    const int cols[3][4] = {
        {2, 3, 4, 5}, // X: (a,b,c,d) -> (0,0,a,b,c,d)
        {4, 5, 0, 1}, // Y: (a,b,c,d) -> (c,d,0,0,a,b)
        {0, 1, 2, 3}, // Z: (a,b,c,d) -> (a,b,c,d,0,0)
    };
    Mat T = diagonal_to_last();
    SimplicialLink link;
    link.kind = LinkKind::spherical;
    for (int ci = 0; ci < 3; ++ci) {
        Component comp = product_square_boundary(alpha, beta);
        Mat E(6, Vec(4, Rat(0)));
        for (int k = 0; k < 4; ++k) E[cols[ci][k]][k] = 1;
        embed_linear(comp, mat_mul(T, E), Vec(6, Rat(0)));
        link.comps.push_back(std::move(comp));
    }
    link.provenance = "borromean";
    return link;
}

void embed_linear(Component& comp, const Mat& E, const Vec& off) {
    if (E.size() != 6 || off.size() != 6)
        throw Error(ErrorCode::Dimension, "embed_linear: E must be 6 x dim");
    comp.embed.clear();
    for (const auto& p : comp.domain) {
        Pt q(6);
        for (int r = 0; r < 6; ++r) {
            if (E[r].size() != p.size())
                throw Error(ErrorCode::Dimension, "embed_linear: column mismatch");
            Rat s = off[r];
            for (size_t c = 0; c < p.size(); ++c) s += E[r][c] * p[c];
            q[r] = s;
        }
        comp.embed.push_back(q);
    }
}

namespace {

// A flat long plane on a lattice, embedded as x -> (x, 0, 0, 0) + off.
Component lattice_plane(const Vec& lo, const Vec& hi, const Rat& cell,
                        const Vec& off) {
    Component c = solid_box_region(lo, hi, cell);
    LongInfo st;
    st.lin = Mat(6, Vec(3, Rat(0)));
    st.lin[0][0] = st.lin[1][1] = st.lin[2][2] = 1;
    st.off = off;
    Rat r = rabs(lo[0]);
    for (int k = 0; k < 3; ++k) {
        r = rmax(r, rabs(lo[k]));
        r = rmax(r, rabs(hi[k]));
    }
    st.interior_radius = r;
    c.standard = st;
    embed_linear(c, st.lin, st.off);
    return c;
}

Pt project5(const Pt& p) { return Pt(p.begin(), p.begin() + 5); }

Rat sup_dist(const Pt& a, const Pt& b) {
    Rat m = 0;
    for (size_t i = 0; i < a.size(); ++i) m = rmax(m, rabs(a[i] - b[i]));
    return m;
}

// All simplices of a link indexed by (component, tet), with bounding boxes.
struct SimplexTable {
    struct Entry {
        int comp, tet;
        Simplex emb, prj;
        BBox ebox, pbox;
    };
    std::vector<Entry> entries;
    explicit SimplexTable(const SimplicialLink& link) {
        for (size_t c = 0; c < link.comps.size(); ++c)
            for (size_t t = 0; t < link.comps[c].cx.tets.size(); ++t) {
                Entry e;
                e.comp = (int)c;
                e.tet = (int)t;
                e.emb = link.comps[c].embed_simplex((int)t);
                e.prj = link.comps[c].projected_simplex((int)t);
                e.ebox = bbox_of(e.emb);
                e.pbox = bbox_of(e.prj);
                entries.push_back(std::move(e));
            }
    }
};

std::vector<std::pair<int, int>> shared_vertices(const Component& comp, int t1,
                                                 int t2) {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (comp.cx.tets[t1][a] == comp.cx.tets[t2][b])
                out.push_back({a, b});
    return out;
}

// True iff the projections of the given tets of `comp` are disjoint from
// every other projected simplex of the link except for clean shared-face
// contact with same-component neighbours.
bool projection_clean(const SimplicialLink& link, const SimplexTable& table,
                      int comp, const std::vector<int>& tets,
                      bool allow_same_comp_adjacency,
                      std::vector<std::array<int, 3>>* offenders = nullptr) {
    bool clean = true;
    auto bad = [&](int t, const SimplexTable::Entry& e) {
        clean = false;
        if (offenders) offenders->push_back({t, e.comp, e.tet});
        return offenders == nullptr; // stop early unless collecting
    };
    for (int t : tets) {
        Simplex S = link.comps[comp].projected_simplex(t);
        BBox sb = bbox_of(S);
        for (const auto& e : table.entries) {
            if (e.comp == comp &&
                std::find(tets.begin(), tets.end(), e.tet) != tets.end())
                continue;
            if (!sb.overlaps(e.pbox)) continue;
            if (e.comp == comp) {
                auto sh = shared_vertices(link.comps[comp], t, e.tet);
                if (!sh.empty()) {
                    if (!allow_same_comp_adjacency ||
                        !adjacent_pair_clean(S, e.prj, sh)) {
                        if (bad(t, e)) return false;
                    }
                    continue;
                }
            }
            if (!disjoint_simplices(S, e.prj))
                if (bad(t, e)) return false;
        }
    }
    return clean;
}

// Description of one intact lattice cell of a long component: the low
// corner, the cell size, the 8 corner vertex ids and the 6 Kuhn tets.
struct LatticeCell {
    Pt low;
    Rat size;
    std::array<int, 8> corner; // bit k of index = axis k high
    std::vector<int> tets;
};

// Find every fully standard intact Kuhn cell of a long component whose
// corners lie strictly inside the standard radius.
std::vector<LatticeCell> intact_cells(const Component& comp) {
    std::map<Pt, int> vid;
    for (int v = 0; v < comp.cx.vertex_count; ++v) vid[comp.domain[v]] = v;
    std::map<std::array<int, 4>, int> tet_at;
    for (size_t t = 0; t < comp.cx.tets.size(); ++t) {
        auto key = comp.cx.tets[t];
        std::sort(key.begin(), key.end());
        tet_at[key] = (int)t;
    }
    auto standard_at = [&](int v) {
        const auto& st = *comp.standard;
        for (int r = 0; r < 6; ++r) {
            Rat want = st.off[r];
            for (int c = 0; c < 3; ++c) want += st.lin[r][c] * comp.domain[v][c];
            if (comp.embed[v][r] != want) return false;
        }
        return true;
    };
    // Candidate cell sizes: lengths of +x axis-aligned edges.
    std::set<Rat> sizes;
    for (const auto& tet : comp.cx.tets)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                Vec d = sub(comp.domain[tet[b]], comp.domain[tet[a]]);
                if (d[0] > 0 && d[1] == 0 && d[2] == 0) sizes.insert(d[0]);
            }
    std::vector<LatticeCell> out;
    for (int v = 0; v < comp.cx.vertex_count; ++v) {
        for (const Rat& s : sizes) {
            LatticeCell cell;
            cell.low = comp.domain[v];
            cell.size = s;
            bool ok = true;
            for (int m = 0; m < 8 && ok; ++m) {
                Pt p = cell.low;
                for (int k = 0; k < 3; ++k)
                    if (m & (1 << k)) p[k] += s;
                auto it = vid.find(p);
                if (it == vid.end() || !standard_at(it->second)) ok = false;
                else cell.corner[m] = it->second;
            }
            if (!ok) continue;
            for (const auto& perm : kPerm3) {
                int mask = 0;
                std::array<int, 4> key;
                key[0] = cell.corner[0];
                for (int step = 0; step < 3; ++step) {
                    mask |= 1 << perm[step];
                    key[step + 1] = cell.corner[mask];
                }
                std::sort(key.begin(), key.end());
                auto it = tet_at.find(key);
                if (it == tet_at.end()) { ok = false; break; }
                cell.tets.push_back(it->second);
            }
            if (ok) out.push_back(std::move(cell));
        }
    }
    return out;
}

bool cell_has_all_neighbours(const std::vector<LatticeCell>& cells,
                             const LatticeCell& c) {
    for (int axis = 0; axis < 3; ++axis)
        for (int dir : {-1, 1}) {
            Pt p = c.low;
            p[axis] += dir * c.size;
            bool found = false;
            for (const auto& o : cells)
                if (o.low == p && o.size == c.size) { found = true; break; }
            if (!found) return false;
        }
    return true;
}

// Triangulate a quad cycle (q0 q1 q2 q3) along the diagonal through its
// lexicographically smallest corner; the rule is intrinsic to the face, so
// the two solids sharing the face agree.
void quad_triangles(const std::array<int, 4>& q,
                    const std::vector<Pt>& pos,
                    std::vector<std::array<int, 3>>& out) {
    int best = 0;
    for (int i = 1; i < 4; ++i)
        if (pos[q[i]] < pos[q[best]]) best = i;
    int a = q[best], b = q[(best + 1) % 4], c = q[(best + 2) % 4],
        d = q[(best + 3) % 4];
    out.push_back({a, b, c});
    out.push_back({a, c, d});
}

} // namespace

SimplicialLink tube(const SimplicialLink& link, int i, int j) {
    if (i < 0 || j < 0 || i >= (int)link.comps.size() ||
        j >= (int)link.comps.size() || i == j)
        throw Error(ErrorCode::InvalidInput, "tube: bad component indices");
    const Component& plane = link.comps[i];
    const Component& sphere = link.comps[j];
    if (!plane.standard)
        throw Error(ErrorCode::InvalidInput,
                    "tube: component i must be a long component");
    if (sphere.standard || sphere.domain.empty() ||
        sphere.domain[0].size() != 4)
        throw Error(ErrorCode::InvalidInput,
                    "tube: component j must be a spherical component");

    // Reconstruct the sphere as an intact product-square boundary.
    Rat h[4] = {0, 0, 0, 0};
    for (const auto& p : sphere.domain)
        for (int k = 0; k < 4; ++k) h[k] = rmax(h[k], rabs(p[k]));
    Component ref = product_square_boundary(h[0], h[2]);
    if (h[0] != h[1] || h[2] != h[3] || ref.domain != sphere.domain ||
        ref.cx.tets != sphere.cx.tets || ref.cx.orient != sphere.cx.orient)
        throw Error(ErrorCode::InvalidInput,
                    "tube: component j is not an intact product-square sphere");

    SimplexTable table(link);

    // Facet f = axis*2 + (side+1)/2 owns tets 6f .. 6f+5 and the 8 corners
    // with the fixed coordinate at side*h[axis].
    struct Facet {
        int axis, side;
        std::vector<int> tets;
        std::vector<int> corners; // sphere vids
        Pt center5;
    };
    std::vector<Facet> facets;
    for (int axis = 0; axis < 4; ++axis)
        for (int side : {-1, 1}) {
            Facet f;
            f.axis = axis;
            f.side = side;
            int fi = axis * 2 + (side + 1) / 2;
            for (int t = 0; t < 6; ++t) f.tets.push_back(6 * fi + t);
            for (int v = 0; v < sphere.cx.vertex_count; ++v)
                if (sphere.domain[v][axis] == Rat(side) * h[axis])
                    f.corners.push_back(v);
            if (f.corners.size() != 8)
                throw Error(ErrorCode::ConsistencyFailure, "tube: facet corners");
            Pt c(5, Rat(0));
            for (int v : f.corners)
                for (int r = 0; r < 5; ++r) c[r] += sphere.embed[v][r];
            for (auto& x : c) x /= 8;
            f.center5 = c;
            facets.push_back(std::move(f));
        }

    std::vector<LatticeCell> cells = intact_cells(plane);

    // Candidate (facet, cell) pairs ordered by the shadow distance between
    // the cell centre and the facet centre.
    struct Cand {
        int facet;
        const LatticeCell* cell;
        Rat score;
    };
    std::vector<Cand> cands;
    for (size_t fi = 0; fi < facets.size(); ++fi)
        for (const auto& cell : cells) {
            if (!cell_has_all_neighbours(cells, cell)) continue;
            Pt center = cell.low;
            for (auto& x : center) x += cell.size / 2;
            const auto& st = *plane.standard;
            Pt c6 = st.off;
            for (int r = 0; r < 6; ++r)
                for (int c = 0; c < 3; ++c) c6[r] += st.lin[r][c] * center[c];
            cands.push_back({(int)fi, &cell, sup_dist(project5(c6),
                                                      facets[fi].center5)});
        }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Cand& a, const Cand& b) { return a.score < b.score; });

    const bool debug = std::getenv("HDL_TUBE_DEBUG") != nullptr;
    auto note = [&](const Facet& F, const LatticeCell& C, const char* why) {
        if (debug)
            std::fprintf(stderr,
                         "tube: facet axis=%d side=%d cell=(%s,%s,%s) %s\n",
                         F.axis, F.side, C.low[0].str().c_str(),
                         C.low[1].str().c_str(), C.low[2].str().c_str(), why);
    };

    std::string last_problem = "no candidate corridors";
    for (const auto& cand : cands) {
        const Facet& F = facets[cand.facet];
        const LatticeCell& C = *cand.cell;

        // The removed pieces must carry no double-point curves.
        if (!projection_clean(link, table, j, F.tets, true)) {
            note(F, C, "facet carries locus");
            continue;
        }
        if (!projection_clean(link, table, i, C.tets, true)) {
            note(F, C, "cell carries locus");
            continue;
        }

        // Free axes of the facet in ascending global order.
        int fa[3];
        {
            int idx = 0;
            for (int k = 0; k < 4; ++k)
                if (k != F.axis) fa[idx++] = k;
        }
        // Schlegel images of the opposite facet's corners: view point at
        // center_F + side*h/4 beyond the facet maps w to free coordinates
        // w_free / 9.
        // Try the two axis assignments (identity and swap of the first two
        // free axes); keep the one gluing the sphere with its own
        // orientation.
        SimplicialLink out;
        bool built = false;
        for (int swap01 = 0; swap01 < 2 && !built; ++swap01) {
            int ax_of[3] = {fa[swap01 ? 1 : 0], fa[swap01 ? 0 : 1], fa[2]};
            // psi: facet-hyperplane point -> domain position in C'.
            auto psi = [&](const Pt& q4) {
                Pt x = C.low;
                for (int k = 0; k < 3; ++k)
                    x[k] += C.size / 2 +
                            Rat(q4[ax_of[k]] / h[ax_of[k]]) * (C.size / 4);
                return x;
            };
            // Domain positions for all 16 sphere corners.
            std::vector<Pt> newdom(sphere.cx.vertex_count);
            for (int v = 0; v < sphere.cx.vertex_count; ++v) {
                Pt q = sphere.domain[v];
                if (q[F.axis] != Rat(F.side) * h[F.axis]) {
                    for (int k = 0; k < 4; ++k)
                        if (k != F.axis) q[k] /= 9;
                    q[F.axis] = Rat(F.side) * h[F.axis];
                }
                newdom[v] = psi(q);
            }
            // Orientation test on the first non-facet tet.
            bool flip_seen = false, keep_seen = false;
            for (size_t t = 0; t < sphere.cx.tets.size(); ++t) {
                if (std::find(F.tets.begin(), F.tets.end(), (int)t) !=
                    F.tets.end())
                    continue;
                std::vector<Pt> pts;
                for (int k = 0; k < 4; ++k)
                    pts.push_back(newdom[sphere.cx.tets[t][k]]);
                int d = orientation_sign(pts);
                if (d == 0)
                    throw Error(ErrorCode::ConsistencyFailure,
                                "tube: degenerate Schlegel tet");
                (d == sphere.cx.orient[t] ? keep_seen : flip_seen) = true;
            }
            if (flip_seen && keep_seen)
                throw Error(ErrorCode::ConsistencyFailure,
                            "tube: inconsistent Schlegel orientation");
            if (flip_seen) continue; // try the swapped identification

            // Assemble the merged component.
            Component merged = plane;
            std::vector<int> nv(sphere.cx.vertex_count);
            for (int v = 0; v < sphere.cx.vertex_count; ++v) {
                nv[v] = merged.cx.vertex_count++;
                merged.domain.push_back(newdom[v]);
                merged.embed.push_back(sphere.embed[v]);
            }
            // Drop the cell tets (indices decreasing to keep them valid).
            std::vector<int> drop = C.tets;
            std::sort(drop.rbegin(), drop.rend());
            for (int t : drop) {
                merged.cx.tets.erase(merged.cx.tets.begin() + t);
                merged.cx.orient.erase(merged.cx.orient.begin() + t);
            }
            std::vector<int> new_tets;
            auto push_tet = [&](std::array<int, 4> tet) {
                std::vector<Pt> pts;
                for (int k = 0; k < 4; ++k) pts.push_back(merged.domain[tet[k]]);
                int d = orientation_sign(pts);
                if (d == 0)
                    throw Error(ErrorCode::ConsistencyFailure,
                                "tube: degenerate tet");
                new_tets.push_back((int)merged.cx.tets.size());
                merged.cx.tets.push_back(tet);
                merged.cx.orient.push_back(d);
            };
            // Ball tets: the sphere minus the facet.
            for (size_t t = 0; t < sphere.cx.tets.size(); ++t) {
                if (std::find(F.tets.begin(), F.tets.end(), (int)t) !=
                    F.tets.end())
                    continue;
                auto tet = sphere.cx.tets[t];
                push_tet({nv[tet[0]], nv[tet[1]], nv[tet[2]], nv[tet[3]]});
            }
            // Inner cube corner ids: bit k of index = axis k high, matched to
            // the facet corner whose free coordinates have the same signs.
            std::array<int, 8> inner;
            for (int v : F.corners) {
                int m = 0;
                for (int k = 0; k < 3; ++k)
                    if (sphere.domain[v][ax_of[k]] > 0) m |= 1 << k;
                inner[m] = nv[v];
            }
            // Shell: six frustums between the cube faces and the shrunk
            // cube faces, each coned from one of its corners. Face
            // triangulations are intrinsic (lex-min diagonal) so adjacent
            // solids conform; the cone apex is an internal choice per
            // frustum, picked so every tet is non-degenerate both in the
            // domain and in the ambient embedding.
            std::vector<int> shell_tets;
            bool shell_ok = true;
            for (int axis = 0; axis < 3 && shell_ok; ++axis)
                for (int hi : {0, 1}) {
                    if (!shell_ok) break;
                    int u = (axis + 1) % 3, w = (axis + 2) % 3;
                    // Quad cycles (counter-clockwise in (u,w)) on both cubes.
                    auto corner = [&](const std::array<int, 8>& c, int bu,
                                      int bw) {
                        int m = (hi << axis) | (bu << u) | (bw << w);
                        return c[m];
                    };
                    std::array<int, 4> outer_q = {
                        corner(C.corner, 0, 0), corner(C.corner, 1, 0),
                        corner(C.corner, 1, 1), corner(C.corner, 0, 1)};
                    std::array<int, 4> inner_q = {
                        corner(inner, 0, 0), corner(inner, 1, 0),
                        corner(inner, 1, 1), corner(inner, 0, 1)};
                    // Faces of the frustum: two quads plus four side quads.
                    std::vector<std::array<int, 4>> quads = {outer_q, inner_q};
                    for (int e = 0; e < 4; ++e)
                        quads.push_back({outer_q[e], outer_q[(e + 1) % 4],
                                         inner_q[(e + 1) % 4], inner_q[e]});
                    // Prefer inner (sphere-facet) corners as cone apexes:
                    // coning from an outer corner spans triangles inside the
                    // base plane, which collide with non-adjacent plane tets
                    // in the projection.
                    std::vector<int> corners;
                    for (int e = 0; e < 4; ++e) corners.push_back(inner_q[e]);
                    std::sort(corners.begin(), corners.end(),
                              [&](int a2, int b2) {
                                  return merged.domain[a2] < merged.domain[b2];
                              });
                    std::vector<int> outer_c;
                    for (int e = 0; e < 4; ++e) outer_c.push_back(outer_q[e]);
                    std::sort(outer_c.begin(), outer_c.end(),
                              [&](int a2, int b2) {
                                  return merged.domain[a2] < merged.domain[b2];
                              });
                    corners.insert(corners.end(), outer_c.begin(),
                                   outer_c.end());
                    auto tet_usable = [&](const std::array<int, 4>& tet) {
                        std::vector<Pt> dp, ep;
                        for (int k = 0; k < 4; ++k) {
                            dp.push_back(merged.domain[tet[k]]);
                            ep.push_back(merged.embed[tet[k]]);
                        }
                        if (orientation_sign(dp) == 0) return false;
                        Mat edges(3, Vec(6));
                        for (int k = 0; k < 3; ++k)
                            edges[k] = sub(ep[k + 1], ep[0]);
                        return rank(edges) == 3;
                    };
                    // Cone from the apex over the faces not containing it
                    // (faces through the apex span flat tets and contribute
                    // nothing).
                    auto cone_tris = [&](int cand_apex) {
                        std::vector<std::array<int, 3>> tris;
                        for (const auto& q : quads) {
                            if (q[0] == cand_apex || q[1] == cand_apex ||
                                q[2] == cand_apex || q[3] == cand_apex)
                                continue;
                            quad_triangles(q, merged.domain, tris);
                        }
                        return tris;
                    };
                    int apex = -1;
                    std::vector<std::array<int, 3>> tris;
                    for (int cand_apex : corners) {
                        auto ts = cone_tris(cand_apex);
                        bool ok2 = true;
                        for (const auto& tr : ts)
                            if (!tet_usable({cand_apex, tr[0], tr[1], tr[2]})) {
                                ok2 = false;
                                break;
                            }
                        if (ok2) {
                            apex = cand_apex;
                            tris = std::move(ts);
                            break;
                        }
                    }
                    if (apex < 0) {
                        shell_ok = false;
                        break;
                    }
                    size_t first = merged.cx.tets.size();
                    for (const auto& tr : tris)
                        push_tet({apex, tr[0], tr[1], tr[2]});
                    for (size_t t = first; t < merged.cx.tets.size(); ++t)
                        shell_tets.push_back((int)t);
                }
            if (!shell_ok) {
                last_problem = "degenerate shell frustum";
                note(F, C, "degenerate shell frustum");
                continue; // next identification / candidate
            }

            out = link;
            out.comps[i] = std::move(merged);
            out.comps.erase(out.comps.begin() + j);
            out.kind = LinkKind::long_knot;

            // The new tube must be clean in the projection against the whole
            // output (shared-face contact with neighbours allowed).
            int oi = i < j ? i : i - 1;
            SimplexTable otable(out);
            std::vector<std::array<int, 3>> offenders;
            if (!projection_clean(out, otable, oi, shell_tets, true,
                                  debug ? &offenders : nullptr)) {
                last_problem = "tube shadow collides";
                note(F, C, "tube shadow collides");
                if (debug)
                    for (const auto& o : offenders)
                        std::fprintf(stderr,
                                     "  shell tet %d vs comp %d tet %d\n",
                                     o[0], o[1], o[2]);
                break; // next candidate
            }
            auto rep = validate(out);
            if (!rep.ok) {
                last_problem = "tube fails validation: " + rep.problems[0];
                note(F, C, last_problem.c_str());
                break;
            }
            built = true;
        }
        if (built) return out;
    }
    throw Error(ErrorCode::NoCorridor,
                "tube: no clean corridor found (" + last_problem + ")");
}

namespace {

// The Borromean spheres together with a flat base plane sitting below all of
// their shadows (the shadows have u4 in [-5, 5], the plane at u4 = -8), so
// the plane adds no double points and tubes can reach each sphere.
SimplicialLink borromean_with_plane() {
    SimplicialLink b = borromean();
    Vec off(6, Rat(0));
    off[3] = -8;
    Component plane = lattice_plane({Rat(-6), Rat(-6), Rat(-6)},
                                    {Rat(6), Rat(6), Rat(6)}, Rat(2), off);
    SimplicialLink link;
    link.kind = LinkKind::long_knot;
    link.comps.push_back(std::move(plane));
    for (auto& c : b.comps) link.comps.push_back(std::move(c));
    return link;
}

} // namespace

SimplicialLink b1() {
    // [plane, X, Y, Z] -> absorb X and Z into the plane; Y stays a sphere.
    SimplicialLink link = borromean_with_plane();
    link = tube(link, 0, 1);
    link = tube(link, 0, 2);
    link.provenance = "b1";
    return link;
}

SimplicialLink b2() {
    // [plane, X, Y, Z] -> absorb Y and Z into the plane; X stays a sphere,
    // then reorder so the sphere matches the second slot of b1's convention.
    SimplicialLink link = borromean_with_plane();
    link = tube(link, 0, 2);
    link = tube(link, 0, 2);
    link.provenance = "b2";
    return link;
}

SimplicialLink trefoil() {
    SimplicialLink link = borromean_with_plane();
    link = tube(link, 0, 1);
    link = tube(link, 0, 1);
    link = tube(link, 0, 1);
    link.smale_term = 0;
    link.provenance = "trefoil";
    return link;
}

SimplicialLink mirror_image(const SimplicialLink& knot) {
    SimplicialLink out = knot;
    for (auto& comp : out.comps) {
        for (auto& p : comp.embed) p[4] = -p[4];
        if (comp.standard) {
            for (auto& x : comp.standard->lin[4]) x = -x;
            comp.standard->off[4] = -comp.standard->off[4];
        }
    }
    out.provenance = "mirror(" + knot.provenance + ")";
    return out;
}

SimplicialLink unknot() {
    Component plane = lattice_plane({Rat(-2), Rat(-2), Rat(-2)},
                                    {Rat(2), Rat(2), Rat(2)}, Rat(2),
                                    Vec(6, Rat(0)));
    SimplicialLink link;
    link.kind = LinkKind::long_knot;
    link.comps.push_back(std::move(plane));
    link.provenance = "unknot";
    return link;
}

SimplicialLink unlink(int k) {
    if (k < 1) throw Error(ErrorCode::InvalidInput, "unlink: k must be >= 1");
    SimplicialLink link;
    link.kind = LinkKind::spherical;
    for (int i = 0; i < k; ++i) {
        Component comp = product_square_boundary(2, 1);
        Mat E(6, Vec(4, Rat(0)));
        for (int c = 0; c < 4; ++c) E[c][c] = 1;
        Vec off(6, Rat(0));
        off[0] = 8 * i;
        embed_linear(comp, E, off);
        link.comps.push_back(std::move(comp));
    }
    link.provenance = "unlink";
    return link;
}

} // namespace hdl
