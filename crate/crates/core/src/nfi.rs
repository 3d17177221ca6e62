//! Objects of the groupoid: normal subgroups `N ≤ PB3` of finite index in
//! `B3`, each stored as the kernel of `φ: B3 -> Sym(n)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use sha2::{Digest, Sha256};

use crate::braidword::{Alphabet, FreeWord, Letter};
use crate::error::{Error, Result};
use crate::permcore::{
    canonical_action, closure_order, eval_letters, generate_group, lcm, Domain, GenHom, GeneratedGroup, Permutation,
};
use crate::Limits;

/// Finite quotients attached to `N`, computed once at construction.
#[derive(Debug)]
pub struct QuotientData {
    /// `B3/N`, words over `σ1, σ2`.
    pub b3_quotient: GeneratedGroup,
    /// `PB3/N`, generated by the images of `x, y, c` in that order.
    pub pb3_quotient: GeneratedGroup,
    /// `F2/N_F2`, words over `x, y`.
    pub f2_quotient: GeneratedGroup,
    /// `[F2/N_F2, F2/N_F2]`, words are products of conjugated commutators.
    pub f2_commutator: GeneratedGroup,
    pub n_ord: u64,
    pub index_pb3: usize,
    pub index_f2: usize,
}

impl QuotientData {
    fn compute(hom: &GenHom, cap: usize) -> Result<Self> {
        let (s1, s2) = (&hom.images()[0], &hom.images()[1]);
        let x = s1 * s1;
        let y = s2 * s2;
        let c = (&(s1 * s2) * s1).pow(2);
        let b3_quotient = generate_group(hom.images(), cap)?;
        let pb3_quotient = generate_group(&[x.clone(), y.clone(), c.clone()], cap)?;
        let f2_quotient = generate_group(&[x.clone(), y.clone()], cap)?;
        let f2_commutator = f2_quotient.commutator_subgroup(cap)?;
        let n_ord = lcm(lcm(x.order(), y.order()), c.order());
        Ok(QuotientData {
            index_pb3: pb3_quotient.order(),
            index_f2: f2_quotient.order(),
            b3_quotient,
            pb3_quotient,
            f2_quotient,
            f2_commutator,
            n_ord,
        })
    }
}

/// An element of the poset of finite-index normal subgroups of `B3` lying in
/// `PB3`, represented by the homomorphism whose kernel it is.
#[derive(Clone)]
pub struct NfiSubgroup {
    hom: GenHom,
    label: String,
    content_id: String,
    data: Arc<QuotientData>,
}

impl fmt::Debug for NfiSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NfiSubgroup")
            .field("label", &self.label)
            .field("degree", &self.degree())
            .field("index_pb3", &self.data.index_pb3)
            .field("n_ord", &self.data.n_ord)
            .finish()
    }
}

impl fmt::Display for NfiSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Validates `σ1 ↦ sigma1, σ2 ↦ sigma2` and builds the object.
pub fn new_nfi(sigma1: Permutation, sigma2: Permutation, label: &str, limits: &Limits) -> Result<NfiSubgroup> {
    let hom = GenHom::new(Domain::B3, vec![sigma1, sigma2])?;
    let data = QuotientData::compute(&hom, limits.max_group_size)?;
    // ker φ ≤ ker ρ iff adjoining ρ does not enlarge the image
    let paired = hom.direct_sum(&GenHom::rho())?;
    if closure_order(paired.images(), limits.max_group_size)? != data.b3_quotient.order() {
        return Err(Error::KernelNotInPb3);
    }
    if data.b3_quotient.order() != 6 * data.index_pb3 {
        return Err(Error::Internal(format!(
            "|B3/N| = {} but |PB3/N| = {}",
            data.b3_quotient.order(),
            data.index_pb3
        )));
    }
    Ok(NfiSubgroup {
        content_id: content_hash(&hom),
        label: label.to_string(),
        hom,
        data: Arc::new(data),
    })
}

fn content_hash(hom: &GenHom) -> String {
    let mut h = Sha256::new();
    h.update((hom.degree() as u64).to_le_bytes());
    for p in hom.images() {
        for &i in p.images() {
            h.update(i.to_le_bytes());
        }
    }
    hex::encode(h.finalize())
}

/// `PB3` itself: the kernel of `ρ`.
pub fn pb3_object() -> NfiSubgroup {
    let rho = GenHom::rho();
    new_nfi(
        rho.images()[0].clone(),
        rho.images()[1].clone(),
        "pb3",
        &Limits::default(),
    )
    .expect("rho defines PB3")
}

impl NfiSubgroup {
    pub fn hom(&self) -> &GenHom {
        &self.hom
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    /// SHA-256 of the degree and image arrays, hex encoded. Independent of
    /// the label.
    pub fn content_id(&self) -> &str {
        &self.content_id
    }

    pub fn data(&self) -> &QuotientData {
        &self.data
    }

    pub fn degree(&self) -> usize {
        self.hom.degree()
    }

    pub fn sigma1(&self) -> &Permutation {
        &self.hom.images()[0]
    }

    pub fn sigma2(&self) -> &Permutation {
        &self.hom.images()[1]
    }

    pub fn x_image(&self) -> &Permutation {
        &self.data.pb3_quotient.generators()[0]
    }

    pub fn y_image(&self) -> &Permutation {
        &self.data.pb3_quotient.generators()[1]
    }

    pub fn c_image(&self) -> &Permutation {
        &self.data.pb3_quotient.generators()[2]
    }

    pub fn n_ord(&self) -> u64 {
        self.data.n_ord
    }

    pub fn index_pb3(&self) -> usize {
        self.data.index_pb3
    }

    pub fn index_f2(&self) -> usize {
        self.data.index_f2
    }

    pub fn b3_order(&self) -> usize {
        self.data.b3_quotient.order()
    }

    /// Image of a word in `σ1, σ2`.
    pub fn eval_b3(&self, w: &FreeWord) -> Permutation {
        assert_eq!(w.alphabet(), Alphabet::B3);
        self.hom.eval(w.letters())
    }

    /// Image of a word in `x, y`, i.e. the coset `w N_F2`.
    pub fn eval_f2(&self, w: &FreeWord) -> Permutation {
        assert_eq!(w.alphabet(), Alphabet::F2);
        self.eval_f2_letters(w.letters())
    }

    pub(crate) fn eval_f2_letters(&self, letters: &[Letter]) -> Permutation {
        let gens = &self.data.pb3_quotient.generators()[..2];
        let inv: Vec<Permutation> = gens.iter().map(Permutation::inverse).collect();
        eval_letters(letters, gens, &inv)
    }

    /// Cheap invariants shared by equal kernels.
    pub fn invariants(&self) -> (usize, u64, usize, usize) {
        (
            self.index_pb3(),
            self.n_ord(),
            self.index_f2(),
            self.data.f2_commutator.order(),
        )
    }
}

/// `N ≤ H`.
pub fn nfi_contains(n: &NfiSubgroup, h: &NfiSubgroup, limits: &Limits) -> Result<bool> {
    if !n.index_pb3().is_multiple_of(h.index_pb3())
        || !n.n_ord().is_multiple_of(h.n_ord())
        || !n.index_f2().is_multiple_of(h.index_f2())
    {
        return Ok(false);
    }
    let paired = n.hom.direct_sum(&h.hom)?;
    Ok(closure_order(paired.images(), limits.max_group_size)? == n.b3_order())
}

/// Equal kernels.
pub fn nfi_equal(n: &NfiSubgroup, k: &NfiSubgroup, limits: &Limits) -> Result<bool> {
    if n.content_id == k.content_id {
        return Ok(true);
    }
    if n.invariants() != k.invariants() {
        return Ok(false);
    }
    // equal index in PB3 turns one containment into equality
    nfi_contains(n, k, limits)
}

/// `⋂ N_i`, realised on the disjoint union of the actions and then reduced
/// to its canonical orbit form.
pub fn nfi_intersect(list: &[NfiSubgroup], limits: &Limits) -> Result<NfiSubgroup> {
    let first = list.first().ok_or(Error::Empty("subgroup list"))?;
    if list.len() == 1 {
        return Ok(first.clone());
    }
    let mut hom = first.hom.clone();
    for n in &list[1..] {
        hom = hom.direct_sum(&n.hom)?;
    }
    let label = list.iter().map(|n| n.label.as_str()).collect::<Vec<_>>().join("&");
    let canon = canonical_action(hom.images())?;
    let mut it = canon.into_iter();
    new_nfi(it.next().unwrap(), it.next().unwrap(), &label, limits)
}

/// Same kernel, relabelled to the canonical orbit form.
pub fn canonicalize(n: &NfiSubgroup, limits: &Limits) -> Result<NfiSubgroup> {
    let canon = canonical_action(n.hom.images())?;
    let mut it = canon.into_iter();
    new_nfi(it.next().unwrap(), it.next().unwrap(), &n.label, limits)
}

/// Given `ψ: F2 -> G` by the images of `x, y`, extends it to `ψ̃` on
/// `PB3 = F2 × ⟨c⟩` with `c ↦ 1` and returns the normal core of `ker ψ̃` in
/// `B3`, realised as the action of `B3` on the cosets of `ker ψ̃`.
///
/// A point is a pair `(g, t)` with `g ∈ im ψ` and `t` a transversal index,
/// standing for the coset `ker ψ̃ · h · t` with `ψ̃(h) = g`. Writing
/// `t · σ = u · c^k · t'` with `u ∈ F2`, the generator `σ` sends `(g, t)` to
/// `(g ψ(u), t')`.
pub fn from_f2_quotient(psi_x: &Permutation, psi_y: &Permutation, limits: &Limits) -> Result<NfiSubgroup> {
    let image = generate_group(&[psi_x.clone(), psi_y.clone()], limits.max_group_size)?;
    let gens = image.generators();
    let inv: Vec<Permutation> = gens.iter().map(Permutation::inverse).collect();
    let order = image.order();
    let mut sigma = [vec![0u32; 6 * order], vec![0u32; 6 * order]];
    for (gi, g) in image.elements().iter().enumerate() {
        for t in 0..6 {
            for (s, out) in sigma.iter_mut().enumerate() {
                let (u, _c, next) = crate::braidword::transversal_step(t, Letter::pos(s as u8));
                let h = g * &eval_letters(u, gens, &inv);
                let hi = image.index_of(&h).ok_or(Error::ElementNotInGroup)?;
                out[6 * gi + t] = (6 * hi + next) as u32;
            }
        }
    }
    let [s1, s2] = sigma;
    new_nfi(
        Permutation::from_images(s1)?,
        Permutation::from_images(s2)?,
        &format!("core(x={psi_x},y={psi_y})"),
        limits,
    )
}

fn symmetric_group(n: usize) -> Vec<Permutation> {
    if n == 1 {
        return vec![Permutation::identity(1)];
    }
    let t = Permutation::from_cycles(n, &[&[0, 1]]).unwrap();
    let cycle: Vec<u32> = (0..n as u32).collect();
    let c = Permutation::from_cycles(n, &[&cycle]).unwrap();
    generate_group(&[t, c], usize::MAX).unwrap().elements().to_vec()
}

fn braid_pairs_of_degree(n: usize) -> BTreeSet<Vec<Permutation>> {
    let elems = symmetric_group(n);
    let rho = GenHom::rho();
    let keys_for = |p: &Permutation| {
        let mut out = Vec::new();
        for q in &elems {
            let pq = p * q;
            if &pq * p == q * &pq {
                let gens = [p.direct_sum(&rho.images()[0]), q.direct_sum(&rho.images()[1])];
                out.push(canonical_action(&gens).expect("equal degrees"));
            }
        }
        out
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let chunks: Vec<Vec<Vec<Permutation>>> = elems.par_iter().map(keys_for).collect();
        chunks.into_iter().flatten().collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        elems.iter().flat_map(keys_for).collect()
    }
}

/// Every kernel of `φ × ρ` with `φ: B3 -> S_n`, `n ≤ max_degree`, one
/// representative per kernel, sorted by `(index_pb3, content_id)`. The
/// result is independent of the thread count.
pub fn catalog_search(max_degree: usize, limits: &Limits) -> Result<Vec<NfiSubgroup>> {
    if max_degree > limits.max_catalog_degree {
        return Err(Error::CatalogDegreeTooLarge {
            requested: max_degree,
            limit: limits.max_catalog_degree,
        });
    }
    if max_degree == 0 {
        return Err(Error::Empty("catalog degree must be positive"));
    }
    let mut keys = BTreeSet::new();
    for n in 1..=max_degree {
        keys.extend(braid_pairs_of_degree(n));
    }
    let keys: Vec<Vec<Permutation>> = keys.into_iter().collect();
    let build = |k: &Vec<Permutation>| new_nfi(k[0].clone(), k[1].clone(), "", limits);
    #[cfg(feature = "parallel")]
    let built: Vec<Result<NfiSubgroup>> = {
        use rayon::prelude::*;
        keys.par_iter().map(build).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let built: Vec<Result<NfiSubgroup>> = keys.iter().map(build).collect();

    let mut buckets: BTreeMap<(usize, u64, usize, usize, usize), Vec<NfiSubgroup>> = BTreeMap::new();
    for n in built {
        let n = n?;
        let (a, b, c, d) = n.invariants();
        let bucket = buckets.entry((a, b, c, d, n.b3_order())).or_default();
        let mut seen = false;
        for rep in bucket.iter() {
            if nfi_contains(&n, rep, limits)? {
                seen = true;
                break;
            }
        }
        if !seen {
            bucket.push(n);
        }
    }
    let mut out: Vec<NfiSubgroup> = buckets.into_values().flatten().collect();
    out.sort_by(|a, b| (a.index_pb3(), &a.content_id).cmp(&(b.index_pb3(), &b.content_id)));
    for (i, n) in out.iter_mut().enumerate() {
        n.label = if n.index_pb3() == 1 {
            "pb3".to_string()
        } else {
            format!("n{i:03}")
        };
    }
    Ok(out)
}
