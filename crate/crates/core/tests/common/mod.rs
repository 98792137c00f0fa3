//! Naive reference decoders over plain vectors, kept separate from the
//! bit-packed implementation so the two can be compared.

#![allow(dead_code)]

use std::collections::BTreeSet;

pub fn known(p: usize, k: usize, i: usize) -> BTreeSet<usize> {
    (1..=k).map(|s| (i + p - s) % p).collect()
}

fn unknowns(sym: &[usize], know: &BTreeSet<usize>) -> Vec<usize> {
    sym.iter().copied().filter(|m| !know.contains(m)).collect()
}

pub fn per_symbol(p: usize, k: usize, code: &[Vec<usize>], i: usize) -> BTreeSet<usize> {
    let kn = known(p, k, i);
    code.iter()
        .map(|s| unknowns(s, &kn))
        .filter(|u| u.len() == 1)
        .map(|u| u[0])
        .collect()
}

pub fn fixed_point(p: usize, k: usize, code: &[Vec<usize>], i: usize) -> BTreeSet<usize> {
    let side = known(p, k, i);
    let mut kn = side.clone();
    loop {
        let mut grew = false;
        for s in code {
            let u = unknowns(s, &kn);
            if u.len() == 1 {
                kn.insert(u[0]);
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    kn.difference(&side).copied().collect()
}

/// Rank over GF(2) of rows given as 0/1 vectors.
fn rank(mut rows: Vec<Vec<u8>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&x| rows[x][col] == 1) else {
            continue;
        };
        rows.swap(r, piv);
        let pivot = rows[r].clone();
        for (x, row) in rows.iter_mut().enumerate() {
            if x != r && row[col] == 1 {
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        r += 1;
    }
    r
}

/// `m` is decodable iff adding `e_m` to symbols plus side information does
/// not raise the rank.
pub fn linear_closure(p: usize, k: usize, code: &[Vec<usize>], i: usize) -> BTreeSet<usize> {
    let side = known(p, k, i);
    let vec_of = |idx: &[usize]| {
        let mut v = vec![0u8; p];
        for &x in idx {
            v[x] ^= 1;
        }
        v
    };
    let mut rows: Vec<Vec<u8>> = code.iter().map(|s| vec_of(s)).collect();
    rows.extend(side.iter().map(|&s| vec_of(&[s])));
    let base = rank(rows.clone());
    (0..p)
        .filter(|m| !side.contains(m))
        .filter(|&m| {
            let mut r = rows.clone();
            r.push(vec_of(&[m]));
            rank(r) == base
        })
        .collect()
}
