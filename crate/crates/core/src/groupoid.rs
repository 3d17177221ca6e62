//! Connected components, isolated objects, `N◇`, reductions, survival,
//! finite-depth genuineness and the main line diagram.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::braidword::{Alphabet, FreeWord};
use crate::error::{Error, Result};
use crate::nfi::{nfi_contains, nfi_equal, nfi_intersect, NfiSubgroup};
use crate::shadows::{compute_sources, enumerate_shadows, shadow_source, GtShadow};
use crate::Limits;

/// One connected component of the groupoid.
#[derive(Clone, Debug)]
pub struct ComponentReport {
    /// One presentation per kernel, sorted by content id.
    pub objects: Vec<NfiSubgroup>,
    /// Index of the starting object in `objects`.
    pub root: usize,
    /// Shadows keyed by `(source index, target index)`.
    pub morphisms: BTreeMap<(usize, usize), Vec<GtShadow>>,
    pub isolated: bool,
    pub diamond: NfiSubgroup,
}

impl ComponentReport {
    pub fn morphism_count(&self) -> usize {
        self.morphisms.values().map(Vec::len).sum()
    }
}

/// Evidence that `shadow` does not survive into `witness`: the full image
/// of `GT(witness)` under reduction, which omits the shadow.
#[derive(Clone, Debug)]
pub struct FakeCertificate {
    pub witness: NfiSubgroup,
    pub reduced_image: Vec<GtShadow>,
}

/// One-sided outcome of a finite-depth search. A shadow can be shown fake;
/// surviving a finite catalog proves nothing more.
#[derive(Clone, Debug)]
pub enum Verdict {
    Fake(FakeCertificate),
    NotFakeToDepth(Vec<NfiSubgroup>),
}

/// The main line diagram over a finite list of isolated objects and its
/// limit.
#[derive(Clone, Debug)]
pub struct MainLine {
    pub objects: Vec<NfiSubgroup>,
    pub groups: Vec<Arc<Vec<GtShadow>>>,
    /// `(finer, coarser) -> table`, with `table[i]` the index in
    /// `groups[coarser]` of the reduction of `groups[finer][i]`.
    pub edges: BTreeMap<(usize, usize), Vec<usize>>,
    /// Compatible tuples, each holding one index per object.
    pub limit: Vec<Vec<usize>>,
}

/// Groupoid exploration with `GT(N)` memoised by content id.
pub struct Explorer {
    limits: Limits,
    memo: BTreeMap<String, Arc<Vec<GtShadow>>>,
}

impl Explorer {
    pub fn new(limits: Limits) -> Self {
        Explorer {
            limits,
            memo: BTreeMap::new(),
        }
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// `GT(N)`, with every source computed.
    pub fn shadows(&mut self, n: &NfiSubgroup) -> Result<Arc<Vec<GtShadow>>> {
        if let Some(v) = self.memo.get(n.content_id()) {
            return Ok(v.clone());
        }
        let all = enumerate_shadows(n, &self.limits)?;
        compute_sources(&all, &self.limits)?;
        let all = Arc::new(all);
        self.memo.insert(n.content_id().into(), all.clone());
        Ok(all)
    }

    /// Breadth-first closure of `N` under taking sources.
    pub fn connected_component(&mut self, n: &NfiSubgroup) -> Result<ComponentReport> {
        let mut objects = vec![n.clone()];
        let mut edges: Vec<(usize, usize, GtShadow)> = Vec::new();
        let mut head = 0;
        while head < objects.len() {
            let target = objects[head].clone();
            for s in self.shadows(&target)?.iter() {
                let src = shadow_source(s, &self.limits)?;
                let mut found = None;
                for (j, o) in objects.iter().enumerate() {
                    if nfi_equal(o, src, &self.limits)? {
                        found = Some(j);
                        break;
                    }
                }
                let j = match found {
                    Some(j) => j,
                    None => {
                        objects.push(src.clone());
                        objects.len() - 1
                    }
                };
                edges.push((j, head, s.clone()));
            }
            head += 1;
        }
        let mut order: Vec<usize> = (0..objects.len()).collect();
        order.sort_by(|&a, &b| objects[a].content_id().cmp(objects[b].content_id()));
        let mut rank = vec![0; objects.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        let mut morphisms: BTreeMap<(usize, usize), Vec<GtShadow>> = BTreeMap::new();
        for (j, i, s) in edges {
            morphisms.entry((rank[j], rank[i])).or_default().push(s);
        }
        let sorted: Vec<NfiSubgroup> = order.iter().map(|&i| objects[i].clone()).collect();
        let diamond = self.intersect_component(&sorted, rank[0])?;
        Ok(ComponentReport {
            isolated: sorted.len() == 1,
            root: rank[0],
            objects: sorted,
            morphisms,
            diamond,
        })
    }

    /// Incremental intersection starting from the root, skipping objects
    /// that already contain the running intersection.
    fn intersect_component(&self, objects: &[NfiSubgroup], root: usize) -> Result<NfiSubgroup> {
        let mut acc = objects[root].clone();
        for (i, k) in objects.iter().enumerate() {
            if i == root || nfi_contains(&acc, k, &self.limits)? {
                continue;
            }
            acc = nfi_intersect(&[acc, k.clone()], &self.limits)?;
        }
        if objects.len() > 1 {
            acc = acc.with_label(&format!("{}◇", objects[root].label()));
        }
        Ok(acc)
    }

    /// Every shadow of `GT(N)` is settled.
    pub fn is_isolated(&mut self, n: &NfiSubgroup) -> Result<bool> {
        for s in self.shadows(n)?.iter() {
            if !nfi_equal(shadow_source(s, &self.limits)?, n, &self.limits)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `N◇`, the intersection of the component of `N`; checked to be isolated
    /// and contained in `N`.
    pub fn diamond(&mut self, n: &NfiSubgroup) -> Result<NfiSubgroup> {
        let d = self.connected_component(n)?.diamond;
        if !nfi_contains(&d, n, &self.limits)? {
            return Err(Error::Internal(format!("{} is not below {}", d.label(), n.label())));
        }
        if !self.is_isolated(&d)? {
            return Err(Error::NotIsolated(d.label().into()));
        }
        Ok(d)
    }

    /// `s` lies in the image of `GT(N) -> GT(H)`, `H` the target of `s`.
    pub fn survives(&mut self, s: &GtShadow, n: &NfiSubgroup) -> Result<bool> {
        let h = s.target().clone();
        if !nfi_contains(n, &h, &self.limits)? {
            return Err(not_contained(n, &h));
        }
        for t in self.shadows(n)?.iter() {
            if &reduce_shadow(t, &h, &self.limits)? == s {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Distinct reductions of `GT(N)` to `H`, in first-seen order.
    pub fn reduce_image(&mut self, n: &NfiSubgroup, h: &NfiSubgroup) -> Result<Vec<GtShadow>> {
        let mut out: Vec<GtShadow> = Vec::new();
        for t in self.shadows(n)?.iter() {
            let r = reduce_shadow(t, h, &self.limits)?;
            if !out.contains(&r) {
                out.push(r);
            }
        }
        Ok(out)
    }

    /// Searches the catalog for an object below the target of `s` into which
    /// `s` does not survive.
    pub fn genuine_to_depth(&mut self, s: &GtShadow, catalog: &[NfiSubgroup]) -> Result<Verdict> {
        let h = s.target().clone();
        let mut checked = Vec::new();
        for n in catalog {
            if !nfi_contains(n, &h, &self.limits)? {
                continue;
            }
            let image = self.reduce_image(n, &h)?;
            if !image.contains(s) {
                return Ok(Verdict::Fake(FakeCertificate {
                    witness: n.clone(),
                    reduced_image: image,
                }));
            }
            checked.push(n.clone());
        }
        Ok(Verdict::NotFakeToDepth(checked))
    }

    /// Independent recheck of a fakeness certificate.
    pub fn verify_fake_certificate(&mut self, s: &GtShadow, cert: &FakeCertificate) -> Result<bool> {
        let h = s.target().clone();
        if !nfi_contains(&cert.witness, &h, &self.limits)? {
            return Ok(false);
        }
        if cert.reduced_image.contains(s) {
            return Ok(false);
        }
        let fresh = self.reduce_image(&cert.witness, &h)?;
        Ok(fresh.len() == cert.reduced_image.len() && fresh.iter().all(|t| cert.reduced_image.contains(t)))
    }

    /// Groups `GT(N)`, reduction tables on comparable pairs and the limit of
    /// the diagram, built as an iterated fiber product.
    pub fn main_line_limit(&mut self, catalog: &[NfiSubgroup]) -> Result<MainLine> {
        let mut groups = Vec::new();
        for n in catalog {
            if !self.is_isolated(n)? {
                return Err(Error::NotIsolated(n.label().into()));
            }
            groups.push(self.shadows(n)?);
        }
        let mut edges = BTreeMap::new();
        for (i, n) in catalog.iter().enumerate() {
            for (j, h) in catalog.iter().enumerate() {
                if i == j || !nfi_contains(n, h, &self.limits)? {
                    continue;
                }
                let mut table = Vec::with_capacity(groups[i].len());
                for s in groups[i].iter() {
                    let r = reduce_shadow(s, h, &self.limits)?;
                    let k = groups[j]
                        .iter()
                        .position(|t| t == &r)
                        .ok_or_else(|| Error::Internal(format!("reduction of {s} to {} is not in GT", h.label())))?;
                    table.push(k);
                }
                edges.insert((i, j), table);
            }
        }
        let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
        for (i, group) in groups.iter().enumerate() {
            let mut next = Vec::new();
            for t in &tuples {
                for g in 0..group.len() {
                    let ok = (0..i).all(|j| {
                        edges.get(&(i, j)).is_none_or(|tab| tab[g] == t[j])
                            && edges.get(&(j, i)).is_none_or(|tab| tab[t[j]] == g)
                    });
                    if ok {
                        let mut u = t.clone();
                        u.push(g);
                        next.push(u);
                    }
                }
                if next.len() > self.limits.max_candidates {
                    return Err(Error::CandidateCapExceeded {
                        cap: self.limits.max_candidates,
                        count: next.len(),
                    });
                }
            }
            tuples = next;
        }
        Ok(MainLine {
            objects: catalog.to_vec(),
            groups,
            edges,
            limit: tuples,
        })
    }
}

fn not_contained(n: &NfiSubgroup, h: &NfiSubgroup) -> Error {
    Error::NotContained {
        inner: n.label().into(),
        outer: h.label().into(),
    }
}

/// `R_{N,H}`: the same pair read modulo `H ⊇ N`.
pub fn reduce_shadow(s: &GtShadow, h: &NfiSubgroup, limits: &Limits) -> Result<GtShadow> {
    let n = s.target();
    if n.content_id() == h.content_id() {
        return Ok(s.clone());
    }
    if !nfi_contains(n, h, limits)? {
        return Err(not_contained(n, h));
    }
    if !n.n_ord().is_multiple_of(h.n_ord()) {
        return Err(Error::Internal(format!(
            "H_ord = {} does not divide N_ord = {}",
            h.n_ord(),
            n.n_ord()
        )));
    }
    let f_elt = h.eval_f2(s.f_word());
    let word = h
        .data()
        .f2_commutator
        .word_of(&f_elt)
        .ok_or_else(|| Error::Internal(format!("reduction of {s} left the commutator subgroup")))?;
    Ok(GtShadow::from_parts(
        h,
        (s.m() % h.n_ord()) as i64,
        FreeWord::new(Alphabet::F2, &word),
    ))
}
