//! Word-level machinery for `B3`, `F2` and the Artin oracle on `F3`.
//!
//! Letters are `(generator index, sign)` pairs. Text format, one character per
//! letter: `B3` uses `a = σ1`, `b = σ2`, `A = σ1⁻¹`, `B = σ2⁻¹`; `F2` uses
//! `x, y, X, Y` with `x = x12 = σ1²` and `y = x23 = σ2²`; `F3` uses
//! `p, q, r` and uppercase for inverses. The empty word is the empty string.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u8,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(gen: u8, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub const fn pos(gen: u8) -> Self {
        Letter { gen, inverse: false }
    }

    pub const fn neg(gen: u8) -> Self {
        Letter { gen, inverse: true }
    }

    pub const fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alphabet {
    /// σ1, σ2
    B3,
    /// x = x12, y = x23
    F2,
    /// a1, a2, a3 (free group acted on by B3)
    F3,
}

impl Alphabet {
    pub fn rank(self) -> u8 {
        match self {
            Alphabet::B3 | Alphabet::F2 => 2,
            Alphabet::F3 => 3,
        }
    }

    fn symbols(self) -> &'static [u8] {
        match self {
            Alphabet::B3 => b"ab",
            Alphabet::F2 => b"xy",
            Alphabet::F3 => b"pqr",
        }
    }

    fn symbol(self, l: Letter) -> char {
        let c = self.symbols()[l.gen as usize] as char;
        if l.inverse {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    fn letter(self, c: char) -> Option<Letter> {
        let lower = c.to_ascii_lowercase();
        let gen = self.symbols().iter().position(|&s| s as char == lower)?;
        Some(Letter::new(gen as u8, c.is_ascii_uppercase()))
    }
}

/// Appends `l` to a reduced letter sequence, cancelling against the tail.
#[inline]
pub(crate) fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inv()) {
        out.pop();
    } else {
        out.push(l);
    }
}

/// Free reduction of an arbitrary letter sequence.
pub fn reduce_letters(letters: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::with_capacity(letters.len());
    for &l in letters {
        push_reduced(&mut out, l);
    }
    out
}

pub(crate) fn invert_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inv()).collect()
}

/// A freely reduced word over a tagged alphabet.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl FreeWord {
    /// Builds a word, freely reducing `letters`. Panics on an out-of-range
    /// generator index.
    pub fn new(alphabet: Alphabet, letters: &[Letter]) -> Self {
        assert!(
            letters.iter().all(|l| l.gen < alphabet.rank()),
            "generator index out of range for {:?}",
            alphabet
        );
        FreeWord {
            alphabet,
            letters: reduce_letters(letters),
        }
    }

    pub(crate) fn from_reduced(alphabet: Alphabet, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|w| w[0] != w[1].inv()));
        FreeWord { alphabet, letters }
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        FreeWord {
            alphabet,
            letters: Vec::new(),
        }
    }

    pub fn generator(alphabet: Alphabet, gen: u8) -> Self {
        FreeWord::new(alphabet, &[Letter::pos(gen)])
    }

    pub fn x() -> Self {
        Self::generator(Alphabet::F2, 0)
    }

    pub fn y() -> Self {
        Self::generator(Alphabet::F2, 1)
    }

    /// `z = y⁻¹ x⁻¹`
    pub fn z() -> Self {
        FreeWord::new(Alphabet::F2, &[Letter::neg(1), Letter::neg(0)])
    }

    pub fn sigma1() -> Self {
        Self::generator(Alphabet::B3, 0)
    }

    pub fn sigma2() -> Self {
        Self::generator(Alphabet::B3, 1)
    }

    /// `Δ = σ1 σ2 σ1`
    pub fn delta() -> Self {
        FreeWord::new(Alphabet::B3, &[Letter::pos(0), Letter::pos(1), Letter::pos(0)])
    }

    /// `c = Δ²`, the central generator.
    pub fn central() -> Self {
        Self::delta().pow(2)
    }

    pub fn parse(alphabet: Alphabet, text: &str) -> Result<Self> {
        let mut letters = Vec::with_capacity(text.len());
        for (pos, ch) in text.chars().enumerate() {
            match alphabet.letter(ch) {
                Some(l) => letters.push(l),
                None => {
                    return Err(Error::WordParse {
                        word: text.into(),
                        ch,
                        pos,
                    });
                }
            }
        }
        Ok(FreeWord::new(alphabet, &letters))
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord::from_reduced(self.alphabet, invert_letters(&self.letters))
    }

    pub fn mul(&self, other: &FreeWord) -> Self {
        assert_eq!(self.alphabet, other.alphabet, "alphabet mismatch");
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        FreeWord::from_reduced(self.alphabet, out)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::new();
        for _ in 0..k.unsigned_abs() {
            for &l in &base.letters {
                push_reduced(&mut out, l);
            }
        }
        FreeWord::from_reduced(self.alphabet, out)
    }

    /// `[u, v] = u v u⁻¹ v⁻¹`
    pub fn commutator(u: &FreeWord, v: &FreeWord) -> Self {
        u.mul(v).mul(&u.inverse()).mul(&v.inverse())
    }

    /// Exponent sum of each generator (the image in the abelianization).
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.alphabet.rank() as usize];
        for l in &self.letters {
            sums[l.gen as usize] += l.sign();
        }
        sums
    }

    /// A word lies in the commutator subgroup iff all exponent sums vanish.
    pub fn in_commutator_subgroup(&self) -> bool {
        self.exponent_sums().iter().all(|&s| s == 0)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            write!(f, "{}", self.alphabet.symbol(l))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}\"{}\"", self.alphabet, self)
    }
}

/// Freely reduces `w`. Words are kept reduced on construction, so this is a
/// normalising copy.
pub fn reduce_word(w: &FreeWord) -> FreeWord {
    FreeWord::new(w.alphabet, &w.letters)
}

/// Homomorphic substitution `gen_i ↦ images[i]`.
pub fn substitute(w: &FreeWord, images: &[FreeWord]) -> FreeWord {
    assert_eq!(images.len(), w.alphabet.rank() as usize, "one image per generator");
    let target = images[0].alphabet;
    assert!(
        images.iter().all(|i| i.alphabet == target),
        "images over mixed alphabets"
    );
    let inverses: Vec<FreeWord> = images.iter().map(FreeWord::inverse).collect();
    let mut out = Vec::new();
    for l in &w.letters {
        let img = if l.inverse {
            &inverses[l.gen as usize]
        } else {
            &images[l.gen as usize]
        };
        for &m in &img.letters {
            push_reduced(&mut out, m);
        }
    }
    FreeWord::from_reduced(target, out)
}

/// Applies the endomorphism of `F2` given by `x ↦ x_image`, `y ↦ y_image`.
pub fn f2_endo_apply(w: &FreeWord, x_image: &FreeWord, y_image: &FreeWord) -> FreeWord {
    assert_eq!(w.alphabet, Alphabet::F2);
    substitute(w, &[x_image.clone(), y_image.clone()])
}

/// `θ: x ↦ y, y ↦ x`
pub fn theta(w: &FreeWord) -> FreeWord {
    f2_endo_apply(w, &FreeWord::y(), &FreeWord::x())
}

/// `τ: x ↦ y, y ↦ y⁻¹ x⁻¹`
pub fn tau(w: &FreeWord) -> FreeWord {
    f2_endo_apply(w, &FreeWord::y(), &FreeWord::z())
}

/// `E_{m,f}: x ↦ x^{2m+1}, y ↦ f⁻¹ y^{2m+1} f`, applied to `w`.
pub fn e_endo(m: i64, f: &FreeWord, w: &FreeWord) -> FreeWord {
    let e = 2 * m + 1;
    let x_img = FreeWord::x().pow(e);
    let y_img = f.inverse().mul(&FreeWord::y().pow(e)).mul(f);
    f2_endo_apply(w, &x_img, &y_img)
}

/// `(m1, f1) • (m2, f2) = (2 m1 m2 + m1 + m2, f1 E_{m1,f1}(f2))`
pub fn bullet_monoid(m1: i64, f1: &FreeWord, m2: i64, f2: &FreeWord) -> (i64, FreeWord) {
    (2 * m1 * m2 + m1 + m2, f1.mul(&e_endo(m1, f1, f2)))
}

/// `x ↦ σ1², y ↦ σ2²`
pub fn embed_f2_in_b3(w: &FreeWord) -> FreeWord {
    assert_eq!(w.alphabet, Alphabet::F2);
    let s1 = FreeWord::sigma1().pow(2);
    let s2 = FreeWord::sigma2().pow(2);
    substitute(w, &[s1, s2])
}

/// Right coset representatives of `PB3` in `B3`, indexed as in
/// [`B3NormalForm::coset_index`]: `e, σ1, σ2, σ1σ2, σ2σ1, σ1σ2σ1`.
pub const TRANSVERSAL: [&str; 6] = ["", "a", "b", "ab", "ba", "aba"];

pub fn transversal_word(index: usize) -> FreeWord {
    FreeWord::parse(Alphabet::B3, TRANSVERSAL[index]).expect("static transversal")
}

const X: Letter = Letter::pos(0);
const XI: Letter = Letter::neg(0);
const Y: Letter = Letter::pos(1);
const YI: Letter = Letter::neg(1);

/// One rewriting step `t · s = q · t'` with `q = u · c^k`, `u ∈ F2`.
struct Step {
    u: &'static [Letter],
    c: i64,
    next: usize,
}

const fn step(u: &'static [Letter], c: i64, next: usize) -> Step {
    Step { u, c, next }
}

// Rows: coset index of t. Columns: σ1, σ1⁻¹, σ2, σ2⁻¹. Entries come from the
// adjoint action σ1 y σ1⁻¹ = y⁻¹x⁻¹c, σ2 x σ2⁻¹ = x⁻¹y⁻¹c, σ1 x σ1⁻¹ = x,
// σ2 y σ2⁻¹ = y, together with σ2 Δ = Δ σ1 and σ1 Δ = Δ σ2.
static STEPS: [[Step; 4]; 6] = [
    // e
    [step(&[], 0, 1), step(&[XI], 0, 1), step(&[], 0, 2), step(&[YI], 0, 2)],
    // σ1
    [step(&[X], 0, 0), step(&[], 0, 0), step(&[], 0, 3), step(&[X, Y], -1, 3)],
    // σ2
    [step(&[], 0, 4), step(&[Y, X], -1, 4), step(&[Y], 0, 0), step(&[], 0, 0)],
    // σ1σ2
    [
        step(&[], 0, 5),
        step(&[YI], 0, 5),
        step(&[YI, XI], 1, 1),
        step(&[], 0, 1),
    ],
    // σ2σ1
    [
        step(&[XI, YI], 1, 2),
        step(&[], 0, 2),
        step(&[], 0, 5),
        step(&[XI], 0, 5),
    ],
    // Δ
    [step(&[Y], 0, 3), step(&[], 0, 3), step(&[X], 0, 4), step(&[], 0, 4)],
];

fn step_column(l: Letter) -> usize {
    2 * l.gen as usize + l.inverse as usize
}

/// Unique decomposition `w = f2_part · c^{c_exponent} · t_{coset_index}` with
/// `f2_part` a reduced word in `x, y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct B3NormalForm {
    pub f2_part: FreeWord,
    pub c_exponent: i64,
    pub coset_index: usize,
}

impl B3NormalForm {
    /// The `B3` word `embed(f2_part) · Δ^{2 c_exponent} · t_{coset_index}`.
    pub fn reassemble(&self) -> FreeWord {
        embed_f2_in_b3(&self.f2_part)
            .mul(&FreeWord::central().pow(self.c_exponent))
            .mul(&transversal_word(self.coset_index))
    }

    /// Index of the coset `PB3 · w`, equivalently of `ρ(w) ∈ S3`.
    pub fn coset(&self) -> usize {
        self.coset_index
    }
}

/// Rewrites `w` left to right, pushing each σ-letter through the running
/// transversal element.
pub fn b3_normal_form(w: &FreeWord) -> B3NormalForm {
    assert_eq!(w.alphabet, Alphabet::B3);
    let mut f2 = Vec::new();
    let mut c = 0i64;
    let mut coset = 0usize;
    for &l in &w.letters {
        let st = &STEPS[coset][step_column(l)];
        for &u in st.u {
            push_reduced(&mut f2, u);
        }
        c += st.c;
        coset = st.next;
    }
    B3NormalForm {
        f2_part: FreeWord::from_reduced(Alphabet::F2, f2),
        c_exponent: c,
        coset_index: coset,
    }
}

/// The pure braid part `q = u · c^k` and the next coset for `t_coset · l`.
pub(crate) fn transversal_step(coset: usize, l: Letter) -> (&'static [Letter], i64, usize) {
    let st = &STEPS[coset][step_column(l)];
    (st.u, st.c, st.next)
}

/// Images of `(a1, a2, a3)` under the Artin automorphism of `F3` attached to
/// `w`, where `σi: a_i ↦ a_i a_{i+1} a_i⁻¹, a_{i+1} ↦ a_i` and the letters
/// of `w` are composed in reading order.
pub fn artin_action(w: &FreeWord) -> [FreeWord; 3] {
    assert_eq!(w.alphabet, Alphabet::B3);
    let mut images: [Vec<Letter>; 3] = [vec![Letter::pos(0)], vec![Letter::pos(1)], vec![Letter::pos(2)]];
    for &l in &w.letters {
        let i = l.gen;
        let j = i + 1;
        // φ_{w·s}(a_k) = φ_w(φ_s(a_k)): substitute current images into φ_s(a_k).
        let (img_i, img_j): (Vec<Letter>, Vec<Letter>) = if !l.inverse {
            (
                concat_images(&images, &[Letter::pos(i), Letter::pos(j), Letter::neg(i)]),
                images[i as usize].clone(),
            )
        } else {
            (
                images[j as usize].clone(),
                concat_images(&images, &[Letter::neg(j), Letter::pos(i), Letter::pos(j)]),
            )
        };
        images[i as usize] = img_i;
        images[j as usize] = img_j;
    }
    images.map(|ls| FreeWord::from_reduced(Alphabet::F3, ls))
}

fn concat_images(images: &[Vec<Letter>; 3], pattern: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::new();
    for p in pattern {
        let img = &images[p.gen as usize];
        if p.inverse {
            for l in img.iter().rev() {
                push_reduced(&mut out, l.inv());
            }
        } else {
            for &l in img {
                push_reduced(&mut out, l);
            }
        }
    }
    out
}

/// Exact equality in `B3` via the faithful Artin action on `F3`.
pub fn artin_equal(u: &FreeWord, v: &FreeWord) -> bool {
    artin_action(u) == artin_action(v)
}

/// Human-readable form of a sequence of generator letters, used for words
/// over arbitrary generator lists.
pub fn letters_to_string(letters: &[Letter]) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for l in letters {
        let _ = write!(s, "g{}{}", l.gen, if l.inverse { "'" } else { "" });
    }
    s
}
