#![allow(dead_code)]

use braidshadow_core::nfi::{catalog_search, new_nfi};
use braidshadow_core::{Alphabet, FreeWord, Letter, Limits, NfiSubgroup, Permutation};
use proptest::prelude::*;
use rand::Rng;

pub fn limits() -> Limits {
    Limits::default()
}

pub fn perm(images: &[u32]) -> Permutation {
    Permutation::from_images(images.to_vec()).unwrap()
}

pub fn word(alphabet: Alphabet, text: &str) -> FreeWord {
    FreeWord::parse(alphabet, text).unwrap()
}

pub fn word_strategy(alphabet: Alphabet, max_len: usize) -> impl Strategy<Value = FreeWord> {
    let rank = alphabet.rank();
    prop::collection::vec((0..rank, any::<bool>()), 0..=max_len).prop_map(move |v| {
        FreeWord::new(
            alphabet,
            &v.into_iter().map(|(g, i)| Letter::new(g, i)).collect::<Vec<_>>(),
        )
    })
}

pub fn random_word<R: Rng>(rng: &mut R, alphabet: Alphabet, max_len: usize) -> FreeWord {
    let len = rng.random_range(0..=max_len);
    let letters: Vec<Letter> = (0..len)
        .map(|_| Letter::new(rng.random_range(0..alphabet.rank()), rng.random_bool(0.5)))
        .collect();
    FreeWord::new(alphabet, &letters)
}

pub fn random_perm<R: Rng>(rng: &mut R, degree: usize) -> Permutation {
    let mut v: Vec<u32> = (0..degree as u32).collect();
    for i in (1..degree).rev() {
        let j = rng.random_range(0..=i);
        v.swap(i, j);
    }
    Permutation::from_images(v).unwrap()
}

pub fn catalog4() -> Vec<NfiSubgroup> {
    catalog_search(4, &limits()).unwrap()
}

/// Two non-isolated objects from the degree 7 catalog, sharing one connected
/// component of size two each.
pub fn n009() -> NfiSubgroup {
    new_nfi(
        perm(&[0, 2, 1, 3, 5, 7, 8, 6, 9, 4]),
        perm(&[1, 0, 2, 4, 6, 5, 9, 3, 7, 8]),
        "n009",
        &limits(),
    )
    .unwrap()
}

pub fn n010() -> NfiSubgroup {
    new_nfi(
        perm(&[0, 2, 1, 3, 5, 7, 8, 9, 4, 6]),
        perm(&[1, 0, 2, 4, 6, 5, 9, 3, 7, 8]),
        "n010",
        &limits(),
    )
    .unwrap()
}

/// Every element reachable from `gens`, by naive closure under right
/// multiplication.
pub fn naive_closure(gens: &[Permutation]) -> std::collections::BTreeSet<Permutation> {
    let deg = gens[0].degree();
    let mut seen = std::collections::BTreeSet::new();
    let mut stack = vec![Permutation::identity(deg)];
    seen.insert(Permutation::identity(deg));
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = &p * g;
            if seen.insert(q.clone()) {
                stack.push(q);
            }
        }
    }
    seen
}

/// Order by repeated multiplication.
pub fn naive_order(p: &Permutation) -> u64 {
    let id = Permutation::identity(p.degree());
    let mut q = p.clone();
    let mut k = 1;
    while q != id {
        q = &q * p;
        k += 1;
    }
    k
}
