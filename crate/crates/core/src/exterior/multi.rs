//! Multi-index bookkeeping for exterior algebra on a fixed basis.
//!
//! A form of degree p is a map from strictly increasing index p-tuples to
//! coefficients. Pairing follows the determinant convention with no
//! factorial normalisation: `(e^{i_1}∧…∧e^{i_p})(e_{j_1},…,e_{j_p}) = det(δ)`.

use std::collections::BTreeMap;

use crate::algebra::RatFun;

pub type Terms = BTreeMap<Vec<usize>, RatFun>;

/// Sort an index sequence, returning the sign of the sorting permutation.
/// `None` if an index repeats.
pub fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut negative = false;
    // insertion sort counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, negative))
}

pub fn add_into(terms: &mut Terms, key: Vec<usize>, value: RatFun) {
    if value.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(key) {
        Entry::Vacant(e) => {
            e.insert(value);
        }
        Entry::Occupied(mut e) => {
            let s = e.get() + &value;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// Add `sign * value` at the sorted position of `idx` (dropped if `idx` repeats).
pub fn add_signed(terms: &mut Terms, idx: &[usize], negative: bool, value: RatFun) {
    if let Some((key, s)) = sort_with_sign(idx) {
        add_into(terms, key, if s != negative { -value } else { value });
    }
}

pub fn wedge_terms(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ia, ca) in a {
        for (ib, cb) in b {
            if ia.iter().any(|i| ib.contains(i)) {
                continue;
            }
            let mut idx = ia.clone();
            idx.extend_from_slice(ib);
            add_signed(&mut out, &idx, false, ca * cb);
        }
    }
    out
}

/// `i_v a` for components `v` in the same basis.
pub fn interior_terms(v: &[RatFun], a: &Terms) -> Terms {
    let mut out = Terms::new();
    for (idx, c) in a {
        for (r, &i) in idx.iter().enumerate() {
            if v[i].is_zero() {
                continue;
            }
            let mut rest = idx.clone();
            rest.remove(r);
            let t = &v[i] * c;
            add_into(&mut out, rest, if r % 2 == 1 { -t } else { t });
        }
    }
    out
}

/// Evaluate a p-form on p vectors.
pub fn apply_terms(a: &Terms, vectors: &[&[RatFun]]) -> RatFun {
    let mut cur = a.clone();
    for v in vectors {
        cur = interior_terms(v, &cur);
    }
    cur.get(&Vec::new()).cloned().unwrap_or_else(RatFun::zero)
}

/// All strictly increasing p-tuples from `0..n`.
pub fn index_tuples(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, p, &mut Vec::new(), &mut out);
    out
}

/// Degree of a set of terms (`None` if empty).
pub fn degree_of(terms: &Terms) -> Option<usize> {
    terms.keys().next().map(Vec::len)
}
