//! Finite permutation groups, enumerated in full.
//!
//! Products follow the right-action convention: `p * q` applies `p` first and
//! then `q`, so `(p * q).apply(i) == q.apply(p.apply(i))`.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use hashbrown::{HashMap, HashSet};

use crate::braidword::{invert_letters, push_reduced, Letter};
use crate::error::{Error, Result};

/// A bijection of `{0, .., n-1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {i} out of range for degree {n}"
                )));
            }
            if seen[i] {
                return Err(Error::InvalidPermutation(format!("index {i} appears twice")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles of 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point out of range in cycle {cycle:?}"
                    )));
                }
                images[a as usize] = b;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Checked product: apply `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    fn mul_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `self^k` for any integer `k`, computed cycle by cycle.
    pub fn pow(&self, k: i64) -> Permutation {
        let n = self.degree();
        let mut images = vec![0u32; n];
        let mut done = vec![false; n];
        let mut cycle = Vec::new();
        for start in 0..n {
            if done[start] {
                continue;
            }
            cycle.clear();
            let mut p = start as u32;
            loop {
                cycle.push(p);
                done[p as usize] = true;
                p = self.images[p as usize];
                if p as usize == start {
                    break;
                }
            }
            let len = cycle.len() as i64;
            let shift = k.rem_euclid(len) as usize;
            for (idx, &pt) in cycle.iter().enumerate() {
                images[pt as usize] = cycle[(idx + shift) % cycle.len()];
            }
        }
        Permutation { images }
    }

    /// Cycle lengths, including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut done = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if done[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !done[p] {
                done[p] = true;
                p = self.images[p] as usize;
                len += 1;
            }
            lens.push(len);
        }
        lens
    }

    /// Smallest `k ≥ 1` with `self^k = id`: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_type().into_iter().fold(1u64, |acc, l| lcm(acc, l as u64))
    }

    /// Action on the disjoint union: `self` on the first block, `other`
    /// shifted past it.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let shift = self.degree() as u32;
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&i| i + shift));
        Permutation { images }
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Panics on a degree mismatch; use [`Permutation::compose`] for a
    /// checked product.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "permutation degree mismatch");
        self.mul_unchecked(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Cycle notation on 0-based points; `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut done = vec![false; n];
        let mut any = false;
        for start in 0..n {
            if done[start] || self.images[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !done[p] {
                done[p] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
                first = false;
                p = self.images[p] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

pub fn perm_compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    p.compose(q)
}

pub fn perm_order(p: &Permutation) -> u64 {
    p.order()
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Evaluates a word over generator letters, starting from `identity`.
pub fn eval_letters(letters: &[Letter], images: &[Permutation], inverses: &[Permutation]) -> Permutation {
    let degree = images[0].degree();
    let mut acc = Permutation::identity(degree);
    for l in letters {
        let g = if l.inverse {
            &inverses[l.gen as usize]
        } else {
            &images[l.gen as usize]
        };
        acc = acc.mul_unchecked(g);
    }
    acc
}

fn check_degrees(perms: &[Permutation]) -> Result<usize> {
    let d = perms.first().ok_or(Error::Empty("generator list"))?.degree();
    for p in perms {
        if p.degree() != d {
            return Err(Error::DegreeMismatch {
                left: d,
                right: p.degree(),
            });
        }
    }
    Ok(d)
}

/// A fully enumerated permutation group with a word for every element.
///
/// Elements are stored in breadth-first order from the identity over the
/// letters `g0, g0⁻¹, g1, g1⁻¹, ..`, so every stored word is shortest in the
/// generators and ties resolve by discovery order. Each generator carries a
/// word over some base alphabet (by default the generator itself) and
/// element words are expanded through those, then freely reduced.
#[derive(Clone)]
pub struct GeneratedGroup {
    degree: usize,
    generators: Vec<Permutation>,
    gen_words: Vec<Vec<Letter>>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    // (parent element, letter over the generator list); unused for index 0
    parent: Vec<(u32, Letter)>,
}

impl fmt::Debug for GeneratedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratedGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .field("order", &self.order())
            .finish()
    }
}

/// Breadth-first closure of `gens`; words are over the generator indices.
pub fn generate_group(gens: &[Permutation], cap: usize) -> Result<GeneratedGroup> {
    let words: Vec<Vec<Letter>> = (0..gens.len()).map(|i| vec![Letter::pos(i as u8)]).collect();
    generate_with_words(gens, &words, cap)
}

/// Breadth-first closure where generator `i` stands for the base-alphabet
/// word `gen_words[i]`.
pub fn generate_with_words(gens: &[Permutation], gen_words: &[Vec<Letter>], cap: usize) -> Result<GeneratedGroup> {
    let degree = check_degrees(gens)?;
    GeneratedGroup::build(degree, gens, gen_words, cap)
}

impl GeneratedGroup {
    fn build(degree: usize, gens: &[Permutation], gen_words: &[Vec<Letter>], cap: usize) -> Result<Self> {
        assert_eq!(gens.len(), gen_words.len());
        assert!(gens.len() < 128, "too many generators");
        let inverses: Vec<Permutation> = gens.iter().map(Permutation::inverse).collect();
        let mut letters = Vec::with_capacity(2 * gens.len());
        for i in 0..gens.len() {
            letters.push((Letter::pos(i as u8), &gens[i]));
            letters.push((Letter::neg(i as u8), &inverses[i]));
        }
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0u32);
        let mut parent = vec![(0u32, Letter::pos(0))];
        let mut head = 0;
        while head < elements.len() {
            for &(l, g) in &letters {
                let next = elements[head].mul_unchecked(g);
                if index.contains_key(&next) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::GroupTooLarge {
                        cap,
                        reached: elements.len() + 1,
                    });
                }
                index.insert(next.clone(), elements.len() as u32);
                elements.push(next);
                parent.push((head as u32, l));
            }
            head += 1;
        }
        Ok(GeneratedGroup {
            degree,
            generators: gens.to_vec(),
            gen_words: gen_words.to_vec(),
            elements,
            index,
            parent,
        })
    }

    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        GeneratedGroup::build(degree, &[], &[], 1).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_words(&self) -> &[Vec<Letter>] {
        &self.gen_words
    }

    /// Elements in breadth-first order; index 0 is the identity.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    /// Letters over the generator list along the spanning tree.
    pub fn generator_path(&self, mut i: usize) -> Vec<Letter> {
        let mut path = Vec::new();
        while i != 0 {
            let (p, l) = self.parent[i];
            path.push(l);
            i = p as usize;
        }
        path.reverse();
        path
    }

    /// Reduced word over the base alphabet evaluating to element `i`.
    pub fn word(&self, i: usize) -> Vec<Letter> {
        let mut out = Vec::new();
        for l in self.generator_path(i) {
            let w = &self.gen_words[l.gen as usize];
            if l.inverse {
                for m in invert_letters(w) {
                    push_reduced(&mut out, m);
                }
            } else {
                for &m in w {
                    push_reduced(&mut out, m);
                }
            }
        }
        out
    }

    pub fn word_of(&self, p: &Permutation) -> Option<Vec<Letter>> {
        self.index_of(p).map(|i| self.word(i))
    }

    /// Evaluates every element's base-alphabet word under `base_images`,
    /// returning values in element order. Runs along the spanning tree, so
    /// it costs one product per element.
    pub fn evaluate_all(&self, base_images: &[Permutation]) -> Vec<Permutation> {
        let d = base_images[0].degree();
        let base_inv: Vec<Permutation> = base_images.iter().map(Permutation::inverse).collect();
        let gen_vals: Vec<Permutation> = self
            .gen_words
            .iter()
            .map(|w| eval_letters(w, base_images, &base_inv))
            .collect();
        let gen_inv: Vec<Permutation> = gen_vals.iter().map(Permutation::inverse).collect();
        let mut out: Vec<Permutation> = Vec::with_capacity(self.order());
        out.push(Permutation::identity(d));
        for i in 1..self.order() {
            let (p, l) = self.parent[i];
            let g = if l.inverse {
                &gen_inv[l.gen as usize]
            } else {
                &gen_vals[l.gen as usize]
            };
            let v = out[p as usize].mul_unchecked(g);
            out.push(v);
        }
        out
    }

    /// `[G, G]` as the normal closure of the generator commutators. Its
    /// generators are products of conjugated commutators of this group's
    /// generator words, so all of its element words lie in the commutator
    /// subgroup of the free group on the base alphabet.
    pub fn commutator_subgroup(&self, cap: usize) -> Result<GeneratedGroup> {
        let k = self.generators.len();
        let mut gens: Vec<Permutation> = Vec::new();
        let mut words: Vec<Vec<Letter>> = Vec::new();
        let mut h = GeneratedGroup::trivial(self.degree);
        for i in 0..k {
            for j in (i + 1)..k {
                let (a, b) = (&self.generators[i], &self.generators[j]);
                let c = a * b;
                let c = &(&c * &a.inverse()) * &b.inverse();
                if h.contains(&c) {
                    continue;
                }
                let (wa, wb) = (&self.gen_words[i], &self.gen_words[j]);
                let mut w = Vec::new();
                for part in [wa.clone(), wb.clone(), invert_letters(wa), invert_letters(wb)] {
                    for l in part {
                        push_reduced(&mut w, l);
                    }
                }
                gens.push(c);
                words.push(w);
                h = generate_with_words(&gens, &words, cap)?;
            }
        }
        // close under conjugation by the generators of G
        let mut changed = !gens.is_empty();
        while changed {
            changed = false;
            let snapshot = gens.len();
            for hi in 0..snapshot {
                for gi in 0..k {
                    let g = &self.generators[gi];
                    let conj = &(&g.inverse() * &gens[hi]) * g;
                    if h.contains(&conj) {
                        continue;
                    }
                    let gw = &self.gen_words[gi];
                    let mut w = Vec::new();
                    for part in [invert_letters(gw), words[hi].clone(), gw.clone()] {
                        for l in part {
                            push_reduced(&mut w, l);
                        }
                    }
                    gens.push(conj);
                    words.push(w);
                    h = generate_with_words(&gens, &words, cap)?;
                    changed = true;
                }
            }
        }
        Ok(h)
    }
}

pub fn commutator_subgroup(g: &GeneratedGroup, cap: usize) -> Result<GeneratedGroup> {
    g.commutator_subgroup(cap)
}

/// Order of `⟨gens⟩`, without word bookkeeping.
pub fn closure_order(gens: &[Permutation], cap: usize) -> Result<usize> {
    let degree = check_degrees(gens)?;
    let mut seen: HashSet<Permutation> = HashSet::new();
    let id = Permutation::identity(degree);
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(e) = queue.pop_front() {
        for g in gens {
            let next = e.mul_unchecked(g);
            if seen.contains(&next) {
                continue;
            }
            if seen.len() >= cap {
                return Err(Error::GroupTooLarge {
                    cap,
                    reached: seen.len() + 1,
                });
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    Ok(seen.len())
}

/// True iff `elems` generate all of `g`.
pub fn is_generating_set(g: &GeneratedGroup, elems: &[Permutation]) -> Result<bool> {
    if elems.iter().any(|e| !g.contains(e)) {
        return Err(Error::ElementNotInGroup);
    }
    if elems.is_empty() {
        return Ok(g.order() == 1);
    }
    Ok(closure_order(elems, g.order())? == g.order())
}

/// Domain of a homomorphism given by generator images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    /// images of σ1, σ2
    B3,
    /// images of x, y
    F2,
    /// images of x12, x23, c
    PB3,
}

impl Domain {
    pub fn arity(self) -> usize {
        match self {
            Domain::B3 | Domain::F2 => 2,
            Domain::PB3 => 3,
        }
    }
}

/// A homomorphism from `B3`, `F2` or `PB3` into a permutation group, given by
/// the images of the standard generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenHom {
    domain: Domain,
    images: Vec<Permutation>,
}

impl GenHom {
    /// Validates the defining relations of the domain.
    pub fn new(domain: Domain, images: Vec<Permutation>) -> Result<Self> {
        if images.len() != domain.arity() {
            return Err(Error::DomainMismatch(format!(
                "{domain:?} needs {} generator images, got {}",
                domain.arity(),
                images.len()
            )));
        }
        check_degrees(&images)?;
        match domain {
            Domain::B3 => {
                let (a, b) = (&images[0], &images[1]);
                if (&(a * b) * a) != (&(b * a) * b) {
                    return Err(Error::BraidRelationViolated);
                }
            }
            Domain::PB3 => {
                let c = &images[2];
                for g in &images[..2] {
                    if g * c != c * g {
                        return Err(Error::CentralImageNotCentral);
                    }
                }
            }
            Domain::F2 => {}
        }
        Ok(GenHom { domain, images })
    }

    /// The standard surjection `ρ: B3 -> S3`, `σ1 ↦ (0 1)`, `σ2 ↦ (1 2)`.
    pub fn rho() -> Self {
        let s1 = Permutation::from_images(vec![1, 0, 2]).unwrap();
        let s2 = Permutation::from_images(vec![0, 2, 1]).unwrap();
        GenHom {
            domain: Domain::B3,
            images: vec![s1, s2],
        }
    }

    /// The homomorphism sending every generator to the identity.
    pub fn trivial(domain: Domain, degree: usize) -> Self {
        GenHom {
            domain,
            images: vec![Permutation::identity(degree); domain.arity()],
        }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn degree(&self) -> usize {
        self.images[0].degree()
    }

    pub fn eval(&self, letters: &[Letter]) -> Permutation {
        let inv: Vec<Permutation> = self.images.iter().map(Permutation::inverse).collect();
        eval_letters(letters, &self.images, &inv)
    }

    /// The image group, words over the domain generators.
    pub fn image(&self, cap: usize) -> Result<GeneratedGroup> {
        generate_group(&self.images, cap)
    }

    /// The paired homomorphism acting on the disjoint union of both domains.
    /// Its kernel is the intersection of the two kernels.
    pub fn direct_sum(&self, other: &GenHom) -> Result<GenHom> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch(format!(
                "{:?} vs {:?}",
                self.domain, other.domain
            )));
        }
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        Ok(GenHom {
            domain: self.domain,
            images,
        })
    }
}

/// `ker φ1 ≤ ker φ2`, decided by `|im(φ1 × φ2)| = |im φ1|`.
pub fn kernel_contained(phi1: &GenHom, phi2: &GenHom, cap: usize) -> Result<bool> {
    let paired = phi1.direct_sum(phi2)?;
    let base = closure_order(&phi1.images, cap)?;
    let pair = closure_order(&paired.images, cap)?;
    Ok(pair == base)
}

/// Canonical representative of the action generated by `gens` up to
/// relabelling of points, trivial orbits and repeated orbits. The kernel of
/// the returned action equals the kernel of the input action.
pub fn canonical_action(gens: &[Permutation]) -> Result<Vec<Permutation>> {
    let n = check_degrees(gens)?;
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<u32>> = Vec::new();
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = vec![start as u32];
        orbit_of[start] = id;
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            for g in gens {
                let q = g.apply(p);
                if orbit_of[q as usize] == usize::MAX {
                    orbit_of[q as usize] = id;
                    orbit.push(q);
                }
            }
            head += 1;
        }
        orbits.push(orbit);
    }
    let mut blocks: Vec<Vec<Vec<u32>>> = orbits
        .iter()
        .filter(|o| o.len() > 1)
        .map(|o| canonical_orbit(gens, o))
        .collect();
    blocks.sort_by(|a, b| a[0].len().cmp(&b[0].len()).then_with(|| a.cmp(b)));
    blocks.dedup();
    if blocks.is_empty() {
        return Ok(vec![Permutation::identity(1); gens.len()]);
    }
    let mut out: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
    for block in blocks {
        let shift = out[0].len() as u32;
        for (g, imgs) in block.into_iter().enumerate() {
            out[g].extend(imgs.into_iter().map(|i| i + shift));
        }
    }
    Ok(out.into_iter().map(|images| Permutation { images }).collect())
}

/// Lexicographically least relabelling of a transitive piece over all
/// breadth-first labellings.
fn canonical_orbit(gens: &[Permutation], orbit: &[u32]) -> Vec<Vec<u32>> {
    let k = orbit.len();
    let mut best: Option<Vec<Vec<u32>>> = None;
    let mut label: HashMap<u32, u32> = HashMap::with_capacity(k);
    for &start in orbit {
        label.clear();
        let mut order = vec![start];
        label.insert(start, 0);
        let mut head = 0;
        while head < order.len() {
            let p = order[head];
            for g in gens {
                let q = g.apply(p);
                if !label.contains_key(&q) {
                    label.insert(q, order.len() as u32);
                    order.push(q);
                }
            }
            head += 1;
        }
        let cand: Vec<Vec<u32>> = gens
            .iter()
            .map(|g| order.iter().map(|&p| label[&g.apply(p)]).collect())
            .collect();
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.expect("nonempty orbit")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn compose_examples() {
        let t = cyc(3, &[&[0, 1]]);
        let id = Permutation::identity(3);
        assert_eq!(t.compose(&id).unwrap(), t);
        assert!(t.compose(&t).unwrap().is_identity());
        assert_eq!(
            t.compose(&Permutation::identity(4)),
            Err(Error::DegreeMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn right_action_convention() {
        let p = cyc(3, &[&[0, 1, 2]]);
        let q = cyc(3, &[&[0, 1]]);
        let pq = &p * &q;
        for i in 0..3 {
            assert_eq!(pq.apply(i), q.apply(p.apply(i)));
        }
    }

    #[test]
    fn order_examples() {
        assert_eq!(Permutation::identity(4).order(), 1);
        assert_eq!(cyc(3, &[&[0, 1, 2]]).order(), 3);
        assert_eq!(cyc(5, &[&[0, 1], &[2, 3, 4]]).order(), 6);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let p = cyc(6, &[&[0, 1], &[2, 3, 4]]);
        let mut acc = Permutation::identity(6);
        for k in 0..8 {
            assert_eq!(p.pow(k), acc);
            assert_eq!(p.pow(-k), acc.inverse());
            acc = &acc * &p;
        }
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_images(vec![]).is_err());
    }

    #[test]
    fn generate_examples() {
        let s3 = generate_group(&[cyc(3, &[&[0, 1]]), cyc(3, &[&[1, 2]])], 1000).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(generate_group(&[cyc(3, &[&[0, 1, 2]])], 1000).unwrap().order(), 3);
        let a4 = generate_group(&[cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 1, 2]])], 1000).unwrap();
        assert_eq!(a4.order(), 12);
        assert!(s3.word(0).is_empty());
        assert!(s3.element(0).is_identity());
    }

    #[test]
    fn size_cap_is_an_error() {
        let gens = [cyc(5, &[&[0, 1]]), cyc(5, &[&[0, 1, 2, 3, 4]])];
        assert!(matches!(
            generate_group(&gens, 50),
            Err(Error::GroupTooLarge { cap: 50, reached: 51 })
        ));
        assert!(matches!(
            closure_order(&gens, 50),
            Err(Error::GroupTooLarge { cap: 50, .. })
        ));
        assert_eq!(generate_group(&gens, 120).unwrap().order(), 120);
    }

    #[test]
    fn generate_rejects_mixed_degrees() {
        let r = generate_group(&[Permutation::identity(2), Permutation::identity(3)], 10);
        assert!(matches!(r, Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn is_generating_set_examples() {
        let s3 = generate_group(&[cyc(3, &[&[0, 1]]), cyc(3, &[&[1, 2]])], 100).unwrap();
        assert!(is_generating_set(&s3, &[cyc(3, &[&[0, 1]]), cyc(3, &[&[1, 2]])]).unwrap());
        assert!(!is_generating_set(&s3, &[cyc(3, &[&[0, 1, 2]])]).unwrap());
        assert!(is_generating_set(&s3, &[cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])]).unwrap());
        let c3 = generate_group(&[cyc(3, &[&[0, 1, 2]])], 100).unwrap();
        assert_eq!(
            is_generating_set(&c3, &[cyc(3, &[&[0, 1]])]),
            Err(Error::ElementNotInGroup)
        );
    }

    #[test]
    fn commutator_of_trivial_group() {
        let g = GeneratedGroup::trivial(3);
        assert_eq!(g.commutator_subgroup(100).unwrap().order(), 1);
        let c3 = generate_group(&[cyc(3, &[&[0, 1, 2]])], 100).unwrap();
        assert_eq!(c3.commutator_subgroup(100).unwrap().order(), 1);
    }

    #[test]
    fn kernel_containment_examples() {
        let rho = GenHom::rho();
        let triv = GenHom::trivial(Domain::B3, 1);
        assert!(kernel_contained(&rho, &triv, 1000).unwrap());
        assert!(!kernel_contained(&triv, &rho, 1000).unwrap());
        assert!(kernel_contained(&rho, &rho, 1000).unwrap());
        let f2 = GenHom::trivial(Domain::F2, 1);
        assert!(matches!(
            kernel_contained(&rho, &f2, 1000),
            Err(Error::DomainMismatch(_))
        ));
    }

    #[test]
    fn genhom_validates_relations() {
        let a = cyc(3, &[&[0, 1]]);
        let b = cyc(3, &[&[0, 1, 2]]);
        assert_eq!(
            GenHom::new(Domain::B3, vec![a.clone(), b.clone()]),
            Err(Error::BraidRelationViolated)
        );
        assert_eq!(
            GenHom::new(Domain::PB3, vec![a.clone(), a.clone(), b.clone()]),
            Err(Error::CentralImageNotCentral)
        );
        assert!(GenHom::new(Domain::F2, vec![a, b]).is_ok());
    }

    #[test]
    fn canonical_action_forgets_labels_and_repeats() {
        let rho = GenHom::rho();
        let relabel = cyc(3, &[&[0, 2]]);
        let conj: Vec<Permutation> = rho
            .images()
            .iter()
            .map(|g| &(&relabel.inverse() * g) * &relabel)
            .collect();
        let doubled: Vec<Permutation> = rho.images().iter().map(|g| g.direct_sum(g)).collect();
        let with_fixed: Vec<Permutation> = rho
            .images()
            .iter()
            .map(|g| g.direct_sum(&Permutation::identity(2)))
            .collect();
        let canon = canonical_action(rho.images()).unwrap();
        assert_eq!(canonical_action(&conj).unwrap(), canon);
        assert_eq!(canonical_action(&doubled).unwrap(), canon);
        assert_eq!(canonical_action(&with_fixed).unwrap(), canon);
        assert_eq!(canon[0].degree(), 3);
    }

    #[test]
    fn display_uses_cycles() {
        assert_eq!(cyc(5, &[&[0, 1], &[2, 3, 4]]).to_string(), "(0 1)(2 3 4)");
        assert_eq!(Permutation::identity(2).to_string(), "()");
    }
}
