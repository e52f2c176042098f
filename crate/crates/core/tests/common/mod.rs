#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Arc;

use pblock::group::FiniteGroup;
use pblock::linalg::{solve, Matrix, Submodule, ZpkContext};
use rand::Rng;

pub fn perm_group(name: &str, degree: usize, gens: &[Vec<usize>]) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::from_permutations(name, degree, gens, 200).unwrap())
}

pub fn s3() -> Arc<FiniteGroup> {
    perm_group("S3", 3, &[vec![1, 0, 2], vec![1, 2, 0]])
}

pub fn s4() -> Arc<FiniteGroup> {
    perm_group("S4", 4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]])
}

pub fn d8() -> Arc<FiniteGroup> {
    perm_group("D8", 4, &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]])
}

pub fn c_n(n: usize) -> Arc<FiniteGroup> {
    let gen: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    perm_group(&format!("C{n}"), n, &[gen])
}

/// Element with the given cycle-notation label (points numbered from 1).
pub fn elem(g: &FiniteGroup, label: &str) -> usize {
    (0..g.order())
        .find(|&x| g.label(x) == label)
        .unwrap_or_else(|| panic!("no element {label}"))
}

/// Additive closure of `gens` in `(Z/m)^n` by breadth-first search.
pub fn span_enumerate(m: u64, n: usize, gens: &[Vec<u64>]) -> HashSet<Vec<u64>> {
    let mut seen = HashSet::new();
    let zero = vec![0u64; n];
    seen.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(v) = frontier.pop() {
        for g in gens {
            let w: Vec<u64> = v.iter().zip(g).map(|(&a, &b)| (a + b % m) % m).collect();
            if seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    seen
}

/// Product in `(Z/m)[G]` by a double loop over the table.
pub fn plain_mul(g: &FiniteGroup, m: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; g.order()];
    for (x, &ax) in a.iter().enumerate() {
        for (y, &by) in b.iter().enumerate() {
            let t = g.mul(x, y);
            out[t] = (out[t] + ax * by) % m;
        }
    }
    out
}

/// Prime powers up to 81.
pub const SMALL_MODULI: &[(u64, u32)] = &[
    (2, 1),
    (2, 2),
    (2, 3),
    (2, 4),
    (2, 5),
    (2, 6),
    (3, 1),
    (3, 2),
    (3, 3),
    (3, 4),
    (5, 1),
    (5, 2),
    (7, 1),
    (7, 2),
];

fn random_vec<R: Rng>(rng: &mut R, ctx: ZpkContext, n: usize) -> Vec<u64> {
    // a random p-power factor makes non-unit pivots common
    let j = rng.gen_range(0..ctx.k());
    (0..n)
        .map(|_| ctx.mul(rng.gen_range(0..ctx.modulus()), ctx.p_pow(j)))
        .collect()
}

fn pick_shape<R: Rng>(rng: &mut R) -> (ZpkContext, usize) {
    let (p, k) = SMALL_MODULI[rng.gen_range(0..SMALL_MODULI.len())];
    let ctx = ZpkContext::new(p, k).unwrap();
    let mut n = rng.gen_range(1..=3);
    while (ctx.modulus() as usize).pow(n as u32) > 20_000 {
        n -= 1;
    }
    (ctx, n)
}

/// Howell canonicity against span enumeration: equal forms iff equal spans,
/// sizes agree, membership agrees on a random vector.
pub fn howell_case<R: Rng>(rng: &mut R) -> Result<(), String> {
    let (ctx, n) = pick_shape(rng);
    let m = ctx.modulus();
    let r = rng.gen_range(0..=3);
    let a: Vec<Vec<u64>> = (0..r).map(|_| random_vec(rng, ctx, n)).collect();
    let b: Vec<Vec<u64>> = if rng.gen_bool(0.5) {
        // same span: elementary operations plus a redundant combination
        let mut b = a.clone();
        for _ in 0..4 {
            if b.len() >= 2 {
                let i = rng.gen_range(0..b.len());
                let j = (i + rng.gen_range(1..b.len())) % b.len();
                let c = rng.gen_range(0..m);
                let src = b[j].clone();
                for (x, y) in b[i].iter_mut().zip(src) {
                    *x = ctx.add(*x, ctx.mul(c, y));
                }
                b.swap(0, i);
            }
            if let Some(row) = b.first_mut() {
                let mut unit = rng.gen_range(1..m);
                while !ctx.is_unit(unit) {
                    unit = rng.gen_range(1..m);
                }
                row.iter_mut().for_each(|x| *x = ctx.mul(*x, unit));
            }
        }
        let mut extra = vec![0; n];
        for row in &a {
            let c = rng.gen_range(0..m);
            for (x, &y) in extra.iter_mut().zip(row) {
                *x = ctx.add(*x, ctx.mul(c, y));
            }
        }
        b.push(extra);
        b
    } else {
        let r2 = rng.gen_range(0..=3);
        (0..r2).map(|_| random_vec(rng, ctx, n)).collect()
    };
    let ha = Submodule::from_generators(ctx, n, a.clone());
    let hb = Submodule::from_generators(ctx, n, b.clone());
    let sa = span_enumerate(m, n, &a);
    let sb = span_enumerate(m, n, &b);
    if (ha == hb) != (sa == sb) {
        return Err(format!("canonicity: {a:?} vs {b:?} over Z/{m}"));
    }
    if (ctx.p() as usize).pow(ha.log_size()) != sa.len() {
        return Err(format!("size: {a:?} over Z/{m}"));
    }
    if Submodule::from_generators(ctx, n, ha.rows().to_vec()) != ha {
        return Err(format!("not idempotent: {a:?} over Z/{m}"));
    }
    let v: Vec<u64> = (0..n).map(|_| rng.gen_range(0..m)).collect();
    if ha.contains(&v).unwrap() != sa.contains(&v) {
        return Err(format!("membership of {v:?} in span {a:?} over Z/{m}"));
    }
    if let Some(w) = sa.iter().next() {
        match ha.coordinates(w).unwrap() {
            Some(c) if &ha.combine(&c) == w => {}
            _ => return Err(format!("coordinates of {w:?} in {a:?} over Z/{m}")),
        }
    }
    Ok(())
}

/// `solve(A, b)` succeeds iff `b` is in the enumerated column span, and a
/// returned solution satisfies `A x = b` with kernel rows in `ker A`.
pub fn solve_case<R: Rng>(rng: &mut R) -> Result<(), String> {
    let (ctx, rows) = pick_shape(rng);
    let m = ctx.modulus();
    let cols = rng.gen_range(1..=3);
    let a_rows: Vec<Vec<u64>> = (0..rows).map(|_| random_vec(rng, ctx, cols)).collect();
    let a = Matrix::from_rows(ctx, cols, &a_rows).unwrap();
    let b = if rng.gen_bool(0.5) {
        let x: Vec<u64> = (0..cols).map(|_| rng.gen_range(0..m)).collect();
        a.mul_vec(&x).unwrap()
    } else {
        (0..rows).map(|_| rng.gen_range(0..m)).collect()
    };
    let columns: Vec<Vec<u64>> = (0..cols)
        .map(|j| (0..rows).map(|i| a.get(i, j)).collect())
        .collect();
    let in_span = span_enumerate(m, rows, &columns).contains(&b);
    let member = Submodule::from_generators(ctx, rows, columns)
        .contains(&b)
        .unwrap();
    if member != in_span {
        return Err(format!(
            "membership disagrees: {a_rows:?}, b = {b:?} over Z/{m}"
        ));
    }
    match solve(&a, &b) {
        Ok(sol) => {
            if !in_span || a.mul_vec(&sol.particular).unwrap() != b {
                return Err(format!("bad solution: {a_rows:?}, b = {b:?} over Z/{m}"));
            }
            for k in sol.kernel.rows() {
                if a.mul_vec(k).unwrap().iter().any(|&x| x != 0) {
                    return Err(format!("kernel row {k:?} not in ker A over Z/{m}"));
                }
            }
            Ok(())
        }
        Err(pblock::Error::NoSolution) if !in_span => Ok(()),
        Err(e) => Err(format!(
            "solve failed ({e}) on {a_rows:?}, b = {b:?} over Z/{m}"
        )),
    }
}
