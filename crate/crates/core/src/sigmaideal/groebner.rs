//! Buchberger bases, normal forms, elimination and ideal intersection over
//! field towers. Desk-scale: plain S-pair queue with the coprime-criterion
//! skip, full inter-reduction at the end.

use crate::fieldtower::FieldTower;
use crate::multipoly::{exp_checked_sub, exp_is_coprime, exp_lcm, MPoly, MonomialOrder};

/// Full normal form of `p` modulo `basis` under `ord`.
pub fn reduce(t: &FieldTower, p: &MPoly, basis: &[MPoly], ord: MonomialOrder) -> MPoly {
    let mut rem = MPoly::zero(p.nvars());
    let mut cur = p.clone();
    'outer: while !cur.is_zero() {
        let (lt_e, lt_c) = {
            let (e, c) = cur.leading(ord).expect("nonzero");
            (e.clone(), c.clone())
        };
        for b in basis {
            if b.is_zero() {
                continue;
            }
            let (be, bc) = b.leading(ord).expect("nonzero");
            if let Some(q) = exp_checked_sub(&lt_e, be) {
                let factor = t.div(&lt_c, bc).expect("field coefficient");
                cur = cur.sub(t, &b.mul_term(t, &q, &factor));
                continue 'outer;
            }
        }
        // leading term irreducible: move it to the remainder
        rem.add_term(t, &lt_e, &lt_c);
        let mut lt = MPoly::zero(cur.nvars());
        lt.add_term(t, &lt_e, &lt_c);
        cur = cur.sub(t, &lt);
    }
    rem
}

fn s_poly(t: &FieldTower, f: &MPoly, g: &MPoly, ord: MonomialOrder) -> MPoly {
    let (fe, fc) = f.leading(ord).expect("nonzero");
    let (ge, gc) = g.leading(ord).expect("nonzero");
    let l = exp_lcm(fe, ge);
    let qf = exp_checked_sub(&l, fe).expect("lcm divisible");
    let qg = exp_checked_sub(&l, ge).expect("lcm divisible");
    let a = f.mul_term(t, &qf, &t.inv(fc).expect("nonzero lc"));
    let b = g.mul_term(t, &qg, &t.inv(gc).expect("nonzero lc"));
    a.sub(t, &b)
}

/// Reduced Groebner basis of the ideal generated by `gens`.
pub fn buchberger(t: &FieldTower, gens: &[MPoly], ord: MonomialOrder) -> Vec<MPoly> {
    let mut basis: Vec<MPoly> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(g.monic(t, ord));
        }
    }
    basis.sort();
    basis.dedup();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (fe, _) = basis[i].leading(ord).expect("nonzero");
        let (ge, _) = basis[j].leading(ord).expect("nonzero");
        if exp_is_coprime(fe, ge) {
            continue;
        }
        let s = s_poly(t, &basis[i], &basis[j], ord);
        let nf = reduce(t, &s, &basis, ord);
        if !nf.is_zero() {
            let nf = nf.monic(t, ord);
            let k = basis.len();
            for idx in 0..k {
                pairs.push((idx, k));
            }
            basis.push(nf);
        }
    }
    interreduce(t, basis, ord)
}

/// Inter-reduction: every element fully reduced against the others, monic,
/// sorted; this makes the basis canonical for a fixed order.
fn interreduce(t: &FieldTower, mut basis: Vec<MPoly>, ord: MonomialOrder) -> Vec<MPoly> {
    loop {
        let mut changed = false;
        let mut next: Vec<MPoly> = Vec::new();
        for i in 0..basis.len() {
            let others: Vec<MPoly> = basis
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, b)| b.clone())
                .collect();
            let nf = reduce(t, &basis[i], &others, ord);
            if nf != basis[i] {
                changed = true;
            }
            if !nf.is_zero() {
                next.push(nf.monic(t, ord));
            } else {
                changed = true;
            }
        }
        next.sort();
        next.dedup();
        if !changed && next.len() == basis.len() {
            return next;
        }
        basis = next;
        if basis.is_empty() {
            return basis;
        }
    }
}

/// Ideal membership via reduction to zero.
pub fn membership(t: &FieldTower, p: &MPoly, gb: &[MPoly], ord: MonomialOrder) -> bool {
    reduce(t, p, gb, ord).is_zero()
}

/// Equality of ideals given by reduced bases under the same order.
pub fn ideal_eq(t: &FieldTower, gb1: &[MPoly], gb2: &[MPoly], ord: MonomialOrder) -> bool {
    gb1.iter().all(|p| membership(t, p, gb2, ord)) && gb2.iter().all(|p| membership(t, p, gb1, ord))
}

/// Groebner basis of the elimination ideal: the returned polynomials
/// involve none of the variables in `elim`.
pub fn eliminate_vars(t: &FieldTower, gens: &[MPoly], elim: &[usize]) -> Vec<MPoly> {
    if gens.is_empty() {
        return Vec::new();
    }
    let nvars = gens[0].nvars();
    // permutation: eliminated variables first (lex: var 0 is largest)
    let mut perm = vec![usize::MAX; nvars];
    for (pos, &v) in elim.iter().enumerate() {
        perm[v] = pos;
    }
    let mut next = elim.len();
    for v in 0..nvars {
        if perm[v] == usize::MAX {
            perm[v] = next;
            next += 1;
        }
    }
    let embedded: Vec<MPoly> = gens.iter().map(|g| g.embed_vars(nvars, &perm)).collect();
    let gb = buchberger(t, &embedded, MonomialOrder::Lex);
    let mut inv = vec![0usize; nvars];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    gb.into_iter()
        .filter(|p| {
            let (e, _) = p.leading(MonomialOrder::Lex).expect("nonzero");
            e[..elim.len()].iter().all(|&x| x == 0)
        })
        .map(|p| p.embed_vars(nvars, &inv))
        .collect()
}

/// Intersection of two ideals via the `w`-trick: `I /\ J = (w I + (1-w) J)
/// eliminate w`.
pub fn intersect(t: &FieldTower, a: &[MPoly], b: &[MPoly], nvars: usize) -> Vec<MPoly> {
    // new variable w at index nvars
    let wide = nvars + 1;
    let map: Vec<usize> = (0..nvars).collect();
    let w = MPoly::var(t, wide, nvars);
    let one_minus_w = MPoly::one(t, wide).sub(t, &w);
    let mut gens = Vec::new();
    for p in a {
        gens.push(p.embed_vars(wide, &map).mul(t, &w));
    }
    for p in b {
        gens.push(p.embed_vars(wide, &map).mul(t, &one_minus_w));
    }
    let elim = eliminate_vars(t, &gens, &[nvars]);
    let back: Vec<usize> = (0..nvars).collect();
    elim.into_iter()
        .map(|p| {
            debug_assert!(!p.involves_var(nvars));
            // shrink back to nvars
            let mut q = MPoly::zero(nvars);
            for (e, c) in p.terms() {
                q.add_term(t, &e[..nvars].to_vec(), c);
            }
            let _ = &back;
            q
        })
        .collect()
}

/// Contraction of an ideal of `K[s_vars]` to the subring generated by
/// `images`: returns generators, in the `r`-variable ring, of
/// `{p : p(images) in ideal}`.
pub fn contract_through(
    t: &FieldTower,
    ideal_gens: &[MPoly],
    images: &[MPoly],
    s_nvars: usize,
) -> Vec<MPoly> {
    let r_nvars = images.len();
    let wide = s_nvars + r_nvars;
    let s_map: Vec<usize> = (0..s_nvars).collect();
    let mut gens: Vec<MPoly> = ideal_gens.iter().map(|g| g.embed_vars(wide, &s_map)).collect();
    for (i, img) in images.iter().enumerate() {
        let u = MPoly::var(t, wide, s_nvars + i);
        gens.push(u.sub(t, &img.embed_vars(wide, &s_map)));
    }
    let elim: Vec<usize> = (0..s_nvars).collect();
    let kept = eliminate_vars(t, &gens, &elim);
    kept.into_iter()
        .map(|p| {
            let mut q = MPoly::zero(r_nvars);
            for (e, c) in p.terms() {
                debug_assert!(e[..s_nvars].iter().all(|&x| x == 0));
                q.add_term(t, &e[s_nvars..].to_vec(), c);
            }
            q
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldtower::rationals;

    #[test]
    fn principal_ideal_membership() {
        let q = rationals();
        // I = (x^2 - 2) in Q[x]: x^4 - 4 is a member
        let x = MPoly::var(&q, 1, 0);
        let f = x.pow(&q, 2).sub(&q, &MPoly::constant(&q, 1, q.from_i64(2)));
        let gb = buchberger(&q, &[f.clone()], MonomialOrder::Lex);
        assert_eq!(gb.len(), 1);
        let p = x.pow(&q, 4).sub(&q, &MPoly::constant(&q, 1, q.from_i64(4)));
        assert!(membership(&q, &p, &gb, MonomialOrder::Lex));
        let np = x.pow(&q, 3);
        assert!(!membership(&q, &np, &gb, MonomialOrder::Lex));
    }

    #[test]
    fn elimination_two_vars() {
        let q = rationals();
        // I = (x - y^2) in Q[x, y], eliminating y leaves nothing;
        // I = (x - y, y - 1) eliminating y gives (x - 1)
        let x = MPoly::var(&q, 2, 0);
        let y = MPoly::var(&q, 2, 1);
        let gens = vec![x.sub(&q, &y), y.sub(&q, &MPoly::one(&q, 2))];
        let elim = eliminate_vars(&q, &gens, &[1]);
        assert_eq!(elim.len(), 1);
        let expect = x.sub(&q, &MPoly::one(&q, 2));
        assert_eq!(elim[0], expect);
    }

    #[test]
    fn intersection_of_linear_ideals() {
        let q = rationals();
        // (x - 1) /\ (x + 1) = (x^2 - 1) in Q[x]
        let x = MPoly::var(&q, 1, 0);
        let a = vec![x.sub(&q, &MPoly::one(&q, 1))];
        let b = vec![x.add(&q, &MPoly::one(&q, 1))];
        let meet = intersect(&q, &a, &b, 1);
        let gb = buchberger(&q, &meet, MonomialOrder::Lex);
        let expect = x.pow(&q, 2).sub(&q, &MPoly::one(&q, 1));
        assert_eq!(gb, vec![expect]);
    }

    #[test]
    fn contraction_along_images() {
        let q = rationals();
        // S = Q[x], R = Q[u], u -> x^2; contract (x - 3): u - 9
        let x = MPoly::var(&q, 1, 0);
        let ideal = vec![x.sub(&q, &MPoly::constant(&q, 1, q.from_i64(3)))];
        let images = vec![x.pow(&q, 2)];
        let contracted = contract_through(&q, &ideal, &images, 1);
        let gb = buchberger(&q, &contracted, MonomialOrder::Lex);
        let u = MPoly::var(&q, 1, 0);
        let expect = u.sub(&q, &MPoly::constant(&q, 1, q.from_i64(9)));
        assert_eq!(gb, vec![expect]);
    }

    #[test]
    fn cyclic2_basis() {
        let q = rationals();
        // x + y, xy - 1 under lex: reduced basis {x + y, y^2 + 1}
        let x = MPoly::var(&q, 2, 0);
        let y = MPoly::var(&q, 2, 1);
        let gens = vec![x.add(&q, &y), x.mul(&q, &y).sub(&q, &MPoly::one(&q, 2))];
        let gb = buchberger(&q, &gens, MonomialOrder::Lex);
        assert_eq!(gb.len(), 2);
        assert!(membership(&q, &gens[1], &gb, MonomialOrder::Lex));
        // y^2 + 1 must be in the ideal
        let p = y.pow(&q, 2).add(&q, &MPoly::one(&q, 2));
        assert!(membership(&q, &p, &gb, MonomialOrder::Lex));
    }
}
