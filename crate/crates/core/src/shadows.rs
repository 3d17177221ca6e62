//! GT-shadows with a fixed target `N`: pairs `(m mod N_ord, f N_F2)`
//! satisfying the hexagon relations modulo `N`, with `2m+1` a unit and
//! `T_{m,f}` onto `B3/N`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;

use crate::braidword::{Alphabet, FreeWord, Letter};
use crate::error::{Error, Result};
use crate::nfi::{new_nfi, nfi_equal, NfiSubgroup};
use crate::permcore::{closure_order, eval_letters, gcd, generate_group, Domain, GenHom, Permutation};
use crate::Limits;

/// A morphism `K -> N` of the groupoid, stored at its target `N`.
pub struct GtShadow {
    target: NfiSubgroup,
    m: u64,
    f_word: FreeWord,
    f_elt: Permutation,
    source: OnceBox<NfiSubgroup>,
}

impl Clone for GtShadow {
    fn clone(&self) -> Self {
        let source = OnceBox::new();
        if let Some(s) = self.source.get() {
            let _ = source.set(alloc::boxed::Box::new(s.clone()));
        }
        GtShadow {
            target: self.target.clone(),
            m: self.m,
            f_word: self.f_word.clone(),
            f_elt: self.f_elt.clone(),
            source,
        }
    }
}

/// Shadows are equal when they have the same target presentation, the same
/// residue `m` and the same coset `f N_F2`; the word witness is ignored.
impl PartialEq for GtShadow {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.f_elt == other.f_elt && self.target.content_id() == other.target.content_id()
    }
}

impl Eq for GtShadow {}

impl fmt::Debug for GtShadow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] -> {}", self.m, self.f_word, self.target.label())
    }
}

impl fmt::Display for GtShadow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = if self.f_word.is_empty() {
            String::from("1")
        } else {
            format!("{}", self.f_word)
        };
        write!(f, "[{}, {}]", self.m, w)
    }
}

struct Sides {
    lhs1: Permutation,
    rhs1: Permutation,
    lhs2: Permutation,
    rhs2: Permutation,
}

fn hexagon_sides(n: &NfiSubgroup, m: i64, f: &Permutation) -> Sides {
    let (g1, g2) = (n.sigma1(), n.sigma2());
    let (x, y, c) = (n.x_image(), n.y_image(), n.c_image());
    let e = 2 * m + 1;
    let fi = f.inverse();
    let g1e = g1.pow(e);
    let conj = &(&fi * &g2.pow(e)) * f;
    let cm = c.pow(m);
    Sides {
        lhs1: &g1e * &conj,
        rhs1: &(&(&(&fi * g1) * g2) * &x.pow(-m)) * &cm,
        lhs2: &conj * &g1e,
        rhs2: &(&(&(g2 * g1) * &y.pow(-m)) * &cm) * f,
    }
}

/// Both hexagon relations modulo `N`, evaluated through `φ`.
pub fn check_hexagons(n: &NfiSubgroup, m: i64, f: &FreeWord) -> bool {
    let s = hexagon_sides(n, m, &n.eval_f2(f));
    s.lhs1 == s.rhs1 && s.lhs2 == s.rhs2
}

fn eval_pair(letters: &[Letter], a: &Permutation, b: &Permutation) -> Permutation {
    eval_letters(letters, &[a.clone(), b.clone()], &[a.inverse(), b.inverse()])
}

/// `f θ(f) ∈ N_F2` and `τ²(y^m f) τ(y^m f) y^m f ∈ N_F2`, where `θ` swaps
/// `x, y` and `τ: x ↦ y, y ↦ y⁻¹x⁻¹`, so that `τ²: x ↦ z, y ↦ x`.
pub fn check_simplified_hexagons(n: &NfiSubgroup, m: i64, f: &FreeWord) -> Result<bool> {
    if f.alphabet() != Alphabet::F2 || !f.in_commutator_subgroup() {
        return Err(Error::NotCommutatorWord(format!("{f}")));
    }
    let (x, y) = (n.x_image(), n.y_image());
    let z = (x * y).inverse();
    let w = f.letters();
    let ff = eval_pair(w, x, y);
    Ok(simplified_at(
        m,
        x,
        y,
        &z,
        &ff,
        &eval_pair(w, y, x),
        &eval_pair(w, &z, x),
        &eval_pair(w, y, &z),
    ))
}

#[allow(clippy::too_many_arguments)]
fn simplified_at(
    m: i64,
    x: &Permutation,
    y: &Permutation,
    z: &Permutation,
    f_xy: &Permutation,
    f_yx: &Permutation,
    f_zx: &Permutation,
    f_yz: &Permutation,
) -> bool {
    if !(f_xy * f_yx).is_identity() {
        return false;
    }
    let p = &(&(&(&x.pow(m) * f_zx) * &z.pow(m)) * f_yz) * &(&y.pow(m) * f_xy);
    p.is_identity()
}

/// Condition (3): `x^{2m+1}` and `f⁻¹ y^{2m+1} f` generate `F2/N_F2`.
pub fn onto_f2(n: &NfiSubgroup, m: i64, f: &Permutation, cap: usize) -> Result<bool> {
    let e = 2 * m + 1;
    let a = n.x_image().pow(e);
    let b = &(&f.inverse() * &n.y_image().pow(e)) * f;
    Ok(closure_order(&[a, b], cap)? == n.index_f2())
}

/// Condition (1): `σ1^{2m+1}` and `f⁻¹ σ2^{2m+1} f` generate `B3/N`.
pub fn onto_b3(n: &NfiSubgroup, m: i64, f: &Permutation, cap: usize) -> Result<bool> {
    let e = 2 * m + 1;
    let a = n.sigma1().pow(e);
    let b = &(&f.inverse() * &n.sigma2().pow(e)) * f;
    Ok(closure_order(&[a, b], cap)? == n.b3_order())
}

fn is_unit(m: i64, n_ord: u64) -> bool {
    let r = (2 * m + 1).rem_euclid(n_ord as i64) as u64;
    gcd(r, n_ord) == 1
}

/// Full membership test for `GT(N)`.
pub fn is_shadow(n: &NfiSubgroup, m: i64, f: &FreeWord, limits: &Limits) -> Result<bool> {
    if f.alphabet() != Alphabet::F2 || !is_unit(m, n.n_ord()) {
        return Ok(false);
    }
    let fe = n.eval_f2(f);
    if !n.data().f2_commutator.contains(&fe) || !check_hexagons(n, m, f) {
        return Ok(false);
    }
    onto_f2(n, m, &fe, limits.max_group_size)
}

impl GtShadow {
    /// Validated constructor; `m` is reduced modulo `N_ord`.
    pub fn new(target: &NfiSubgroup, m: i64, f_word: FreeWord, limits: &Limits) -> Result<Self> {
        if !is_shadow(target, m, &f_word, limits)? {
            let f = if f_word.is_empty() {
                String::from("1")
            } else {
                format!("{f_word}")
            };
            return Err(Error::NotAShadow {
                m,
                f,
                target: target.label().into(),
            });
        }
        let f_elt = target.eval_f2(&f_word);
        Ok(GtShadow::raw(
            target,
            m.rem_euclid(target.n_ord() as i64) as u64,
            f_word,
            f_elt,
        ))
    }

    /// Unvalidated constructor for pairs already known to be shadows.
    pub(crate) fn from_parts(target: &NfiSubgroup, m: i64, f_word: FreeWord) -> Self {
        let f_elt = target.eval_f2(&f_word);
        GtShadow::raw(target, m.rem_euclid(target.n_ord() as i64) as u64, f_word, f_elt)
    }

    fn raw(target: &NfiSubgroup, m: u64, f_word: FreeWord, f_elt: Permutation) -> Self {
        GtShadow {
            target: target.clone(),
            m,
            f_word,
            f_elt,
            source: OnceBox::new(),
        }
    }

    pub fn target(&self) -> &NfiSubgroup {
        &self.target
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn f_word(&self) -> &FreeWord {
        &self.f_word
    }

    pub fn f_elt(&self) -> &Permutation {
        &self.f_elt
    }

    pub fn is_identity(&self) -> bool {
        self.m == 0 && self.f_elt.is_identity()
    }

    /// The source, if it has already been computed.
    pub fn cached_source(&self) -> Option<&NfiSubgroup> {
        self.source.get()
    }
}

/// `[0, 1]`, the identity morphism of `N`.
pub fn identity_shadow(n: &NfiSubgroup) -> GtShadow {
    let s = GtShadow::raw(n, 0, FreeWord::empty(Alphabet::F2), Permutation::identity(n.degree()));
    let _ = s.source.set(alloc::boxed::Box::new(n.clone()));
    s
}

/// `T_{m,f}: σ1 ↦ σ1^{2m+1}, σ2 ↦ f⁻¹ σ2^{2m+1} f` into `B3/N`.
pub fn t_hom(s: &GtShadow) -> Result<GenHom> {
    let n = &s.target;
    let e = 2 * s.m as i64 + 1;
    let a = n.sigma1().pow(e);
    let b = &(&s.f_elt.inverse() * &n.sigma2().pow(e)) * &s.f_elt;
    let hom = GenHom::new(Domain::B3, vec![a, b]).map_err(|err| Error::Internal(format!("T_(m,f) of {s:?}: {err}")))?;
    let (a, b) = (&hom.images()[0], &hom.images()[1]);
    if (&(a * b) * a).pow(2) != n.c_image().pow(e) {
        return Err(Error::Internal(format!("T(c) != c^(2m+1) for {s:?}")));
    }
    Ok(hom)
}

/// `ker T_{m,f}`, computed once per shadow value.
pub fn shadow_source<'a>(s: &'a GtShadow, limits: &Limits) -> Result<&'a NfiSubgroup> {
    s.source.get_or_try_init(|| {
        let hom = t_hom(s)?;
        if hom.images() == s.target.hom().images() {
            return Ok(alloc::boxed::Box::new(s.target.clone()));
        }
        let mut it = hom.images().iter().cloned();
        let label = format!("{}{}", s.target.label(), s);
        let k = new_nfi(it.next().unwrap(), it.next().unwrap(), &label, limits)?;
        Ok(alloc::boxed::Box::new(k))
    })
}

/// Number of `(m, f)` pairs scanned by [`enumerate_shadows`].
pub fn candidate_count(n: &NfiSubgroup) -> usize {
    let units = (0..n.n_ord()).filter(|&m| is_unit(m as i64, n.n_ord())).count();
    units.saturating_mul(n.data().f2_commutator.order())
}

/// All of `GT(N)`, ordered by `m` and then by the breadth-first order of
/// `[F2/N_F2, F2/N_F2]`. Candidates are filtered by the unit condition, then
/// the simplified hexagons, then surjectivity.
pub fn enumerate_shadows(n: &NfiSubgroup, limits: &Limits) -> Result<Vec<GtShadow>> {
    let count = candidate_count(n);
    if count > limits.max_candidates {
        return Err(Error::CandidateCapExceeded {
            cap: limits.max_candidates,
            count,
        });
    }
    let comm = &n.data().f2_commutator;
    let (x, y) = (n.x_image().clone(), n.y_image().clone());
    let z = (&x * &y).inverse();
    let f_xy = comm.evaluate_all(&[x.clone(), y.clone()]);
    let f_yx = comm.evaluate_all(&[y.clone(), x.clone()]);
    let f_zx = comm.evaluate_all(&[z.clone(), x.clone()]);
    let f_yz = comm.evaluate_all(&[y.clone(), z.clone()]);
    let first: Vec<usize> = (0..comm.order())
        .filter(|&i| (&f_xy[i] * &f_yx[i]).is_identity())
        .collect();
    let units: Vec<u64> = (0..n.n_ord()).filter(|&m| is_unit(m as i64, n.n_ord())).collect();
    let cap = limits.max_group_size;

    let scan = |&m: &u64| -> Result<Vec<GtShadow>> {
        let mut out = Vec::new();
        for &i in &first {
            let mi = m as i64;
            if !simplified_at(mi, &x, &y, &z, &f_xy[i], &f_yx[i], &f_zx[i], &f_yz[i]) {
                continue;
            }
            if !onto_f2(n, mi, &f_xy[i], cap)? {
                continue;
            }
            let word = FreeWord::new(Alphabet::F2, &comm.word(i));
            out.push(GtShadow::raw(n, m, word, f_xy[i].clone()));
        }
        Ok(out)
    };
    #[cfg(feature = "parallel")]
    let parts: Vec<Result<Vec<GtShadow>>> = {
        use rayon::prelude::*;
        units.par_iter().map(scan).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<Result<Vec<GtShadow>>> = units.iter().map(scan).collect();
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// Computes the sources of many shadows, in parallel when available.
pub fn compute_sources(shadows: &[GtShadow], limits: &Limits) -> Result<()> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        shadows
            .par_iter()
            .try_for_each(|s| shadow_source(s, limits).map(|_| ()))
    }
    #[cfg(not(feature = "parallel"))]
    {
        shadows.iter().try_for_each(|s| shadow_source(s, limits).map(|_| ()))
    }
}

/// `s1 ∘ s2`, defined when the source of `s1` is the target of `s2`: the
/// `•` product of `(m1, f1)` and `(m2, f2)`, read at the target of `s1`.
/// The word of the result is the canonical commutator word of its coset.
pub fn compose_shadows(s1: &GtShadow, s2: &GtShadow, limits: &Limits) -> Result<GtShadow> {
    let k = shadow_source(s1, limits)?;
    if !nfi_equal(k, &s2.target, limits)? {
        return Err(Error::SourceTargetMismatch);
    }
    let n = &s1.target;
    let n_ord = n.n_ord() as u128;
    let (m1, m2) = (s1.m as u128, s2.m as u128);
    let m = ((2 * m1 * m2 + m1 + m2) % n_ord) as u64;
    // E_{m1,f1}(f2) read in N: f2 evaluated at x^{e1}, f1⁻¹ y^{e1} f1
    let e1 = 2 * s1.m as i64 + 1;
    let a = n.x_image().pow(e1);
    let b = &(&s1.f_elt.inverse() * &n.y_image().pow(e1)) * &s1.f_elt;
    let f_elt = &s1.f_elt * &eval_pair(s2.f_word.letters(), &a, &b);
    let word = n
        .data()
        .f2_commutator
        .word_of(&f_elt)
        .ok_or_else(|| Error::Internal(format!("{s1:?} ∘ {s2:?} left the commutator subgroup")))?;
    let out = GtShadow::raw(n, m, FreeWord::new(Alphabet::F2, &word), f_elt);
    if let Some(src) = s2.source.get() {
        let _ = out.source.set(alloc::boxed::Box::new(src.clone()));
    }
    Ok(out)
}

fn inverse_mod(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(n as i128) as u64)
}

/// The inverse morphism `N -> K`, a shadow with target `K = source(s)`.
///
/// `m̃ = -(2m+1)⁻¹ m mod N_ord`. For `f̃`, the isomorphism
/// `F2/K_F2 -> F2/N_F2` induced by `E_{m,f}` is tabulated by enumerating
/// `⟨x^{2m+1}, f⁻¹ y^{2m+1} f⟩ = F2/N_F2` with words in `x, y`; the word `w`
/// found for `f⁻¹` satisfies `E_{m,f}(w) ≡ f⁻¹`, and `f̃ = w K_F2`.
pub fn invert_shadow(s: &GtShadow, limits: &Limits) -> Result<GtShadow> {
    let k = shadow_source(s, limits)?;
    let n = &s.target;
    let n_ord = n.n_ord();
    let unit = (2 * s.m + 1) % n_ord.max(1);
    let inv = inverse_mod(2 * s.m + 1, n_ord).ok_or(Error::UnitInverseMissing { unit, modulus: n_ord })?;
    let m_t = ((n_ord as u128 - (inv as u128 * s.m as u128) % n_ord as u128) % n_ord as u128) as u64;

    let e = 2 * s.m as i64 + 1;
    let a = n.x_image().pow(e);
    let b = &(&s.f_elt.inverse() * &n.y_image().pow(e)) * &s.f_elt;
    let table = generate_group(&[a, b], limits.max_group_size)?;
    let w = table
        .word_of(&s.f_elt.inverse())
        .ok_or_else(|| Error::Internal(format!("T^F2 of {s:?} is not onto")))?;
    let f_elt = k.eval_f2_letters(&w);
    let word = k
        .data()
        .f2_commutator
        .word_of(&f_elt)
        .ok_or_else(|| Error::Internal(format!("inverse of {s:?} left the commutator subgroup")))?;
    let out = GtShadow::raw(k, m_t, FreeWord::new(Alphabet::F2, &word), f_elt);
    let _ = out.source.set(alloc::boxed::Box::new(n.clone()));
    Ok(out)
}
