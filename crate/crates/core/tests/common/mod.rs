//! Independent oracles shared by the integration test targets.
#![allow(dead_code)]

use std::collections::BTreeSet;

use ginzburg_modules::field::FieldSpec;
use ginzburg_modules::fixtures::{arrow, quiver};
use ginzburg_modules::quiver::{CycleTraversal, Direction, GradedQuiver};
use rand::Rng;

/// Random sphere quiver: vertices `v0..`, arrows `e0..` with uniform endpoints (loops allowed).
pub fn random_quiver<R: Rng>(
    rng: &mut R,
    max_vertices: usize,
    max_arrows: usize,
    degrees: std::ops::RangeInclusive<i64>,
    n: i64,
) -> GradedQuiver {
    let nv = rng.gen_range(1..=max_vertices);
    let na = rng.gen_range(0..=max_arrows);
    let names: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let arrows = (0..na)
        .map(|i| {
            let s = rng.gen_range(0..nv);
            let t = rng.gen_range(0..nv);
            let mut a = arrow(&format!("e{i}"), &names[s], &names[t], rng.gen_range(degrees.clone()));
            a.sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            a
        })
        .collect();
    quiver(n, FieldSpec::Rationals, &refs, arrows)
}

/// A ring `v0 – v1 – … – v(k−1) – v0` with random orientations, plus a few extra arrows,
/// and the traversal around the ring.
pub fn random_ring<R: Rng>(rng: &mut R) -> (GradedQuiver, CycleTraversal) {
    let k = rng.gen_range(1..=5);
    let n = rng.gen_range(3..=5);
    let names: Vec<String> = (0..k + 2).map(|i| format!("v{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut arrows = Vec::new();
    let mut steps = Vec::new();
    for i in 0..k {
        let (a, b) = (&names[i], &names[(i + 1) % k]);
        let id = format!("r{i}");
        let d = rng.gen_range(-6..=6);
        if rng.gen_bool(0.5) {
            arrows.push(arrow(&id, a, b, d));
            steps.push((id, Direction::Forward));
        } else {
            arrows.push(arrow(&id, b, a, d));
            steps.push((id, Direction::Backward));
        }
    }
    for j in 0..rng.gen_range(0..3) {
        let s = rng.gen_range(0..k + 2);
        let t = rng.gen_range(0..k + 2);
        arrows.push(arrow(&format!("x{j}"), &names[s], &names[t], rng.gen_range(-6..=6)));
    }
    (quiver(n, FieldSpec::Rationals, &refs, arrows), CycleTraversal { steps })
}

/// Exhaustive normalization: potentials in `[lo, hi]` per vertex and, for each arrow,
/// either orientation, accepting when every arrow lands in `(2 − n, 0]`.
///
/// Orientation choices are independent per arrow, so they are tried inside the
/// per-arrow check instead of as an outer product.
pub fn normalize_bruteforce(q: &GradedQuiver, lo: i64, hi: i64) -> bool {
    let nv = q.num_vertices();
    let n = q.n();
    let ok = |d: i64| d > 2 - n && d <= 0;
    let arrow_ok = |e: usize, p: &[i64]| {
        let (s, t) = q.ends(e);
        let d = q.degree(e) + p[s] - p[t];
        ok(d) || ok(2 - n - d)
    };
    // Visit vertices so that each new vertex is adjacent to an earlier one where possible.
    let mut order = Vec::new();
    let mut placed = vec![false; nv];
    for root in 0..nv {
        if placed[root] {
            continue;
        }
        placed[root] = true;
        order.push(root);
        let mut i = order.len() - 1;
        while i < order.len() {
            let u = order[i];
            for e in 0..q.num_arrows() {
                let (s, t) = q.ends(e);
                for (a, b) in [(s, t), (t, s)] {
                    if a == u && !placed[b] {
                        placed[b] = true;
                        order.push(b);
                    }
                }
            }
            i += 1;
        }
    }
    let mut pos = vec![0; nv];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut p = vec![0i64; nv];
    fn go(
        k: usize,
        order: &[usize],
        pos: &[usize],
        p: &mut Vec<i64>,
        lo: i64,
        hi: i64,
        q: &GradedQuiver,
        arrow_ok: &dyn Fn(usize, &[i64]) -> bool,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        for val in lo..=hi {
            p[v] = val;
            let consistent = (0..q.num_arrows()).all(|e| {
                let (s, t) = q.ends(e);
                let last = pos[s].max(pos[t]);
                last != k || arrow_ok(e, p)
            });
            if consistent && go(k + 1, order, pos, p, lo, hi, q, arrow_ok) {
                return true;
            }
        }
        false
    }
    go(0, &order, &pos, &mut p, lo, hi, q, &arrow_ok)
}

/// Naive simple-cycle enumeration over degree-0 arrows: depth-first search from each
/// basepoint through larger vertices only, returning arrow-index sequences.
pub fn naive_zero_cycles(q: &GradedQuiver) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    let zero: Vec<usize> = (0..q.num_arrows()).filter(|&e| q.degree(e) == 0).collect();
    fn dfs(
        q: &GradedQuiver,
        zero: &[usize],
        base: usize,
        at: usize,
        visited: &mut Vec<usize>,
        path: &mut Vec<usize>,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        for &e in zero {
            let (s, t) = q.ends(e);
            if s != at {
                continue;
            }
            if t == base {
                let mut c = path.clone();
                c.push(e);
                out.insert(c);
            } else if t > base && !visited.contains(&t) {
                visited.push(t);
                path.push(e);
                dfs(q, zero, base, t, visited, path, out);
                path.pop();
                visited.pop();
            }
        }
    }
    for base in 0..q.num_vertices() {
        dfs(q, &zero, base, base, &mut vec![base], &mut Vec::new(), &mut out);
    }
    out
}

// ---------------------------------------------------------------------------
// modules

use std::collections::BTreeMap;
use std::sync::Arc;

use ginzburg_modules::field::{ExactMatrix, Poly, Scalar};
use ginzburg_modules::ginzburg::{Gen, GinzburgPresentation};
use ginzburg_modules::pmod::ProperModule;

pub fn random_scalar<R: Rng>(rng: &mut R, field: FieldSpec) -> Scalar {
    match field {
        FieldSpec::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
        FieldSpec::Rationals => field.from_i64(rng.gen_range(-3..=3)),
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, field: FieldSpec, rows: usize, cols: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, random_scalar(rng, field));
        }
    }
    m
}

/// A random validated module over a presentation with degree-0 arrows and `n = 3`.
///
/// Each of up to `max_slices` distinct degrees in `[-3, 0]` carries spaces of dimension at
/// most `max_dim`. Arrow and `h` blocks are random; with probability `zero_p` an arrow
/// block is zero. The `y` blocks are a random solution of the relations
/// `Σ_{e out of v} X_e Y_e − Σ_{e into v} Y_e X_e = 0`, which are linear in the `Y`s.
pub fn random_module<R: Rng>(
    rng: &mut R,
    pres: &Arc<GinzburgPresentation>,
    max_dim: usize,
    max_slices: usize,
    zero_p: f64,
) -> ProperModule {
    let q = pres.quiver();
    assert_eq!(q.n(), 3);
    assert!((0..q.num_arrows()).all(|e| q.degree(e) == 0));
    let field = q.field();
    let nv = q.num_vertices();
    loop {
        let mut degs: Vec<i64> = (-3..=0).collect();
        let k = rng.gen_range(1..=max_slices);
        while degs.len() > k {
            degs.remove(rng.gen_range(0..degs.len()));
        }
        let mut dims: BTreeMap<(usize, i64), usize> = BTreeMap::new();
        for v in 0..nv {
            for &t in &degs {
                let d = rng.gen_range(0..=max_dim);
                if d > 0 {
                    dims.insert((v, t), d);
                }
            }
        }
        if dims.is_empty() {
            continue;
        }
        let dim = |v: usize, t: i64| dims.get(&(v, t)).copied().unwrap_or(0);
        let mut maps: BTreeMap<(Gen, i64), ExactMatrix> = BTreeMap::new();
        for e in 0..q.num_arrows() {
            let (s, t) = q.ends(e);
            for &d in &degs {
                if !rng.gen_bool(zero_p) {
                    maps.insert((Gen::X(e), d), random_matrix(rng, field, dim(s, d), dim(t, d)));
                }
            }
        }
        for v in 0..nv {
            for &d in &degs {
                if rng.gen_bool(0.5) {
                    maps.insert((Gen::H(v), d), random_matrix(rng, field, dim(v, d - 2), dim(v, d)));
                }
            }
        }
        let x = |maps: &BTreeMap<(Gen, i64), ExactMatrix>, e: usize, d: i64| {
            let (s, t) = q.ends(e);
            maps.get(&(Gen::X(e), d))
                .cloned()
                .unwrap_or_else(|| ExactMatrix::zeros(field, dim(s, d), dim(t, d)))
        };
        // Unknowns: entries of Y_e at source degree d, mapping M(s)^d → M(t)^{d−1}.
        let mut unknowns: Vec<(usize, i64, usize, usize)> = Vec::new();
        for e in 0..q.num_arrows() {
            let (s, t) = q.ends(e);
            for &d in &degs {
                for i in 0..dim(t, d - 1) {
                    for j in 0..dim(s, d) {
                        unknowns.push((e, d, i, j));
                    }
                }
            }
        }
        let residual = |ys: &BTreeMap<(usize, i64), ExactMatrix>| -> Vec<Scalar> {
            let y = |e: usize, d: i64| {
                let (s, t) = q.ends(e);
                ys.get(&(e, d))
                    .cloned()
                    .unwrap_or_else(|| ExactMatrix::zeros(field, dim(t, d - 1), dim(s, d)))
            };
            let mut out = Vec::new();
            for v in 0..nv {
                for &d in &degs {
                    let mut r = ExactMatrix::zeros(field, dim(v, d - 1), dim(v, d));
                    for e in 0..q.num_arrows() {
                        let (s, t) = q.ends(e);
                        if s == v {
                            r = r.add(&x(&maps, e, d - 1).mul(&y(e, d)));
                        }
                        if t == v {
                            r = r.sub(&y(e, d).mul(&x(&maps, e, d)));
                        }
                    }
                    out.extend(r.to_rows().into_iter().flatten());
                }
            }
            out
        };
        if !unknowns.is_empty() {
            let mut cols = Vec::new();
            for &(e, d, i, j) in &unknowns {
                let (s, t) = q.ends(e);
                let mut m = ExactMatrix::zeros(field, dim(t, d - 1), dim(s, d));
                m.set(i, j, field.one());
                cols.push(residual(&[((e, d), m)].into_iter().collect()));
            }
            let rows = cols[0].len();
            let sol = if rows == 0 {
                ExactMatrix::identity(field, unknowns.len())
            } else {
                ExactMatrix::from_columns(field, rows, &cols).kernel()
            };
            let mut coeffs = vec![field.zero(); unknowns.len()];
            for c in 0..sol.cols() {
                let k = random_scalar(rng, field);
                for (r, co) in coeffs.iter_mut().enumerate() {
                    *co = &*co + &(&k * sol.get(r, c));
                }
            }
            let mut ys: BTreeMap<(usize, i64), ExactMatrix> = BTreeMap::new();
            for (&(e, d, i, j), c) in unknowns.iter().zip(coeffs) {
                let (s, t) = q.ends(e);
                ys.entry((e, d))
                    .or_insert_with(|| ExactMatrix::zeros(field, dim(t, d - 1), dim(s, d)))
                    .set(i, j, c);
            }
            for ((e, d), m) in ys {
                maps.insert((Gen::Y(e), d), m);
            }
        }
        let mut spaces = vec![BTreeMap::new(); nv];
        for (&(v, t), &d) in &dims {
            spaces[v].insert(t, d);
        }
        return ProperModule::new(pres.clone(), spaces, maps).expect("oracle-built module validates");
    }
}

/// A random degree-0 module: dimensions at most `max_dim`, arrow blocks zero with
/// probability `zero_p`.
pub fn random_heart_module<R: Rng>(
    rng: &mut R,
    pres: &Arc<GinzburgPresentation>,
    max_dim: usize,
    zero_p: f64,
) -> ProperModule {
    let q = pres.quiver();
    let field = q.field();
    loop {
        let dims: Vec<usize> = (0..q.num_vertices()).map(|_| rng.gen_range(0..=max_dim)).collect();
        if dims.iter().all(|&d| d == 0) {
            continue;
        }
        let mut maps = BTreeMap::new();
        for e in 0..q.num_arrows() {
            let (s, t) = q.ends(e);
            if q.degree(e) == 0 && !rng.gen_bool(zero_p) {
                maps.insert((Gen::X(e), 0), random_matrix(rng, field, dims[s], dims[t]));
            }
        }
        let spaces = dims
            .iter()
            .map(|&d| {
                if d > 0 {
                    [(0, d)].into_iter().collect()
                } else {
                    BTreeMap::new()
                }
            })
            .collect();
        return ProperModule::new(pres.clone(), spaces, maps).expect("degree-0 module validates");
    }
}

/// Brute-force minimal polynomial: the first power of `t` dependent on the lower ones.
pub fn minimal_polynomial(t: &ExactMatrix) -> Poly {
    let n = t.rows();
    let field = t.field();
    let flat = |m: &ExactMatrix| m.to_rows().into_iter().flatten().collect::<Vec<Scalar>>();
    let mut powers = vec![flat(&ExactMatrix::identity(field, n))];
    let mut p = ExactMatrix::identity(field, n);
    loop {
        p = p.mul(t);
        let target = flat(&p);
        let basis = ExactMatrix::from_columns(field, n * n, &powers);
        if let Some(sol) = basis.solve(&ExactMatrix::from_columns(field, n * n, &[target.clone()])) {
            let mut coeffs: Vec<Scalar> = (0..powers.len()).map(|i| -sol.get(i, 0).clone()).collect();
            coeffs.push(field.one());
            return Poly::new(field, coeffs);
        }
        powers.push(target);
    }
}

// ---------------------------------------------------------------------------
// finite-field oracles

/// Every vector of `F_p^d`.
pub fn all_vectors(field: FieldSpec, d: usize) -> Vec<Vec<Scalar>> {
    let elems = field.elements().expect("finite field");
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                elems.iter().map(move |x| {
                    let mut w = v.clone();
                    w.push(x.clone());
                    w
                })
            })
            .collect();
    }
    out
}

/// The set of vectors reachable from `seed` at `v` by sums and degree-0 generator
/// matrices, computed by saturation over explicit vector sets.
pub fn closure_by_saturation(
    m: &ProperModule,
    v: usize,
    seed: &[Vec<Scalar>],
    deg: i64,
) -> BTreeMap<usize, BTreeSet<Vec<Scalar>>> {
    let q = m.quiver();
    let field = m.field();
    let nv = q.num_vertices();
    let mut sets: BTreeMap<usize, BTreeSet<Vec<Scalar>>> = (0..nv)
        .map(|u| (u, [vec![field.zero(); m.dim(u, deg)]].into_iter().collect()))
        .collect();
    sets.get_mut(&v).unwrap().extend(seed.iter().cloned());
    let gens: Vec<Gen> = m.degree_zero_generators();
    loop {
        let mut changed = false;
        for u in 0..nv {
            let cur: Vec<Vec<Scalar>> = sets[&u].iter().cloned().collect();
            for a in &cur {
                for b in &cur {
                    let s: Vec<Scalar> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    changed |= sets.get_mut(&u).unwrap().insert(s);
                }
            }
        }
        for g in &gens {
            let (to, from) = g.ends(q);
            let block = m.block(*g, deg);
            let cur: Vec<Vec<Scalar>> = sets[&from].iter().cloned().collect();
            for a in cur {
                changed |= sets.get_mut(&to).unwrap().insert(block.mul_vec(&a));
            }
        }
        if !changed {
            return sets;
        }
    }
}

/// The sign assignment under which the per-arrow signs reproduce the commutator sum.
pub fn matching_signs(q: &GradedQuiver) -> GradedQuiver {
    let n = q.n();
    let s: i8 = if (n * (n - 1) / 2) % 2 == 0 { -1 } else { 1 };
    let arrows = q
        .arrows()
        .iter()
        .map(|a| {
            let mut b = a.clone();
            b.sign = s;
            b
        })
        .collect();
    GradedQuiver::new(n, q.field(), q.vertices().to_vec(), arrows).unwrap()
}

/// Closed degree-0 paths at `v` with at most `len` steps, by depth-first enumeration.
pub fn count_closed_paths(q: &GradedQuiver, v: usize, len: usize) -> u128 {
    fn go(q: &GradedQuiver, at: usize, v: usize, left: usize) -> u128 {
        let mut c = u128::from(at == v);
        if left == 0 {
            return c;
        }
        for e in 0..q.num_arrows() {
            let (s, t) = q.ends(e);
            if s == at && q.degree(e) == 0 {
                c += go(q, t, v, left - 1);
            }
        }
        c
    }
    go(q, v, v, len)
}
