//! End-to-end acceptance run. Prints one PASS or FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::fs;
use std::time::Instant;

use braidshadow::format::CatalogDoc;
use braidshadow_core::braidword::{artin_equal, b3_normal_form, tau, theta};
use braidshadow_core::groupoid::reduce_shadow;
use braidshadow_core::nfi::{catalog_search, from_f2_quotient, nfi_contains, nfi_equal, nfi_intersect, pb3_object};
use braidshadow_core::permcore::{gcd, generate_group, kernel_contained, Domain, GenHom};
use braidshadow_core::shadows::{
    check_hexagons, check_simplified_hexagons, compose_shadows, enumerate_shadows, identity_shadow, invert_shadow,
    onto_b3, onto_f2, shadow_source,
};
use braidshadow_core::{Alphabet, Explorer, FreeWord, GtShadow, Letter, Limits, NfiSubgroup, Permutation, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn limits() -> Limits {
    Limits::default()
}

fn catalog4() -> Result<Vec<NfiSubgroup>, String> {
    ok(catalog_search(4, &limits()))
}

fn random_word(rng: &mut ChaCha8Rng, alphabet: Alphabet, max_len: usize) -> FreeWord {
    let len = rng.random_range(0..=max_len);
    let letters: Vec<Letter> = (0..len)
        .map(|_| Letter::new(rng.random_range(0..2), rng.random_bool(0.5)))
        .collect();
    FreeWord::new(alphabet, &letters)
}

fn candidates(n: &NfiSubgroup) -> impl Iterator<Item = (i64, FreeWord)> + '_ {
    let comm = &n.data().f2_commutator;
    (0..n.n_ord() as i64)
        .flat_map(move |m| (0..comm.order()).map(move |i| (m, FreeWord::new(Alphabet::F2, &comm.word(i)))))
}

fn is_unit(m: i64, n_ord: u64) -> bool {
    gcd((2 * m as u64 + 1) % n_ord, n_ord) == 1
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let l = limits();
    let n = pb3_object();
    let all = ok(enumerate_shadows(&n, &l))?;
    ensure!(all.len() == 1, "|GT(PB3)| = {}", all.len());
    ensure!(
        all[0].m() == 0 && all[0].f_word().is_empty() && all[0].is_identity(),
        "shadow is {:?}",
        all[0]
    );
    ensure!(ok(Explorer::new(l).is_isolated(&n))?, "PB3 is not isolated");
    let t = start.elapsed();
    ensure!(t < std::time::Duration::from_secs(1), "took {t:?}");
    Ok(format!("GT(PB3) = {{[0, 1]}}, isolated, {t:.2?}"))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10_000 {
        let w = random_word(&mut rng, Alphabet::B3, 40);
        ensure!(
            artin_equal(&b3_normal_form(&w).reassemble(), &w),
            "normal form of {w} does not round-trip"
        );
    }
    for _ in 0..1_000 {
        let w = random_word(&mut rng, Alphabet::F2, 40);
        ensure!(theta(&theta(&w)) == w, "θ² ≠ id on {w}");
        ensure!(tau(&tau(&tau(&w))) == w, "τ³ ≠ id on {w}");
    }
    Ok("10000 B3 words round-trip; θ² = τ³ = id on 1000 F2 words".into())
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    let mut passing = 0;
    for n in catalog4()? {
        for (m, f) in candidates(&n) {
            let full = check_hexagons(&n, m, &f);
            ensure!(
                full == ok(check_simplified_hexagons(&n, m, &f))?,
                "{} ({m}, {f})",
                n.label()
            );
            count += 1;
            passing += usize::from(full);
        }
    }
    Ok(format!("{count} candidates, {passing} satisfy both forms"))
}

fn criterion_4() -> Outcome {
    let cap = limits().max_group_size;
    let mut count = 0;
    for n in catalog4()? {
        for (m, f) in candidates(&n) {
            if !is_unit(m, n.n_ord()) || !check_hexagons(&n, m, &f) {
                continue;
            }
            let fe = n.eval_f2(&f);
            ensure!(
                ok(onto_f2(&n, m, &fe, cap))? == ok(onto_b3(&n, m, &fe, cap))?,
                "{} ({m}, {f})",
                n.label()
            );
            count += 1;
        }
    }
    Ok(format!("conditions agree on {count} filtered candidates"))
}

/// Closure, associativity, identities and inverses on one component.
fn check_component(ex: &mut Explorer, root: &NfiSubgroup) -> Result<(usize, usize), String> {
    let l = limits();
    let c = ok(ex.connected_component(root))?;
    let all: Vec<GtShadow> = c.morphisms.values().flatten().cloned().collect();
    let source_of = |s: &GtShadow| -> Result<usize, String> {
        let k = ok(shadow_source(s, &l))?;
        for (i, o) in c.objects.iter().enumerate() {
            if ok(nfi_equal(k, o, &l))? {
                return Ok(i);
            }
        }
        Err(format!("source of {s:?} is outside the component"))
    };
    let target_of = |s: &GtShadow| {
        c.objects
            .iter()
            .position(|o| o.content_id() == s.target().content_id())
            .unwrap()
    };
    let src: Vec<usize> = all.iter().map(source_of).collect::<Result<_, _>>()?;
    let tgt: Vec<usize> = all.iter().map(target_of).collect();
    let mut triples = 0;
    for (i, a) in all.iter().enumerate() {
        let id_src = identity_shadow(&c.objects[src[i]]);
        let id_tgt = identity_shadow(&c.objects[tgt[i]]);
        ensure!(
            ok(compose_shadows(&id_tgt, a, &l))? == *a,
            "left identity fails on {a:?}"
        );
        ensure!(
            ok(compose_shadows(a, &id_src, &l))? == *a,
            "right identity fails on {a:?}"
        );
        let inv = ok(invert_shadow(a, &l))?;
        ensure!(
            ok(compose_shadows(a, &inv, &l))?.is_identity(),
            "a ∘ a⁻¹ ≠ id for {a:?}"
        );
        ensure!(
            ok(compose_shadows(&inv, a, &l))?.is_identity(),
            "a⁻¹ ∘ a ≠ id for {a:?}"
        );
        for (j, b) in all.iter().enumerate().filter(|&(j, _)| tgt[j] == src[i]) {
            let ab = ok(compose_shadows(a, b, &l))?;
            ensure!(all.contains(&ab), "{a:?} ∘ {b:?} is not a morphism");
            for c3 in all
                .iter()
                .enumerate()
                .filter(|&(k, _)| tgt[k] == src[j])
                .map(|(_, c3)| c3)
            {
                let left = ok(compose_shadows(&ab, c3, &l))?;
                let right = ok(compose_shadows(a, &ok(compose_shadows(b, c3, &l))?, &l))?;
                ensure!(left == right, "associativity fails on {a:?}, {b:?}, {c3:?}");
                triples += 1;
            }
        }
    }
    Ok((all.len(), triples))
}

/// Two non-isolated objects of the degree 7 catalog, forming one component.
fn pair_fixture() -> Result<NfiSubgroup, String> {
    let p = |v: &[u32]| ok(Permutation::from_images(v.to_vec()));
    ok(braidshadow_core::nfi::new_nfi(
        p(&[0, 2, 1, 3, 5, 7, 8, 6, 9, 4])?,
        p(&[1, 0, 2, 4, 6, 5, 9, 3, 7, 8])?,
        "n009",
        &limits(),
    ))
}

fn criterion_5() -> Outcome {
    let mut ex = Explorer::new(limits());
    let (mut morphisms, mut triples) = (0, 0);
    let cat = catalog4()?;
    for n in &cat {
        let (m, t) = check_component(&mut ex, n)?;
        morphisms += m;
        triples += t;
    }
    let (m, t) = check_component(&mut ex, &pair_fixture()?)?;
    Ok(format!(
        "{} components from the catalog ({morphisms} morphisms, {triples} triples); \
         two-object component: {m} morphisms, {t} triples",
        cat.len()
    ))
}

fn criterion_6() -> Outcome {
    let l = limits();
    let mut count = 0;
    let mut objects = catalog4()?;
    objects.push(pair_fixture()?);
    for n in &objects {
        for s in ok(enumerate_shadows(n, &l))? {
            let prod = &n.eval_f2(s.f_word()) * &n.eval_f2(&theta(s.f_word()));
            ensure!(prod.is_identity(), "f θ(f) ∉ N_F2 for {s:?}");
            let k = ok(shadow_source(&s, &l))?;
            ensure!(k.n_ord() == n.n_ord(), "K_ord ≠ N_ord for {s:?}");
            ensure!(k.b3_order() == n.b3_order(), "|B3/K| ≠ |B3/N| for {s:?}");
            ensure!(k.index_f2() == n.index_f2(), "|F2:K_F2| ≠ |F2:N_F2| for {s:?}");
            let t = ok(invert_shadow(&s, &l))?;
            let modulus = 2 * n.n_ord() as u128;
            let prod = (2 * s.m() as u128 + 1) * (2 * t.m() as u128 + 1) % modulus;
            ensure!(prod == 1 % modulus, "(2m+1)(2m̃+1) = {prod} mod {modulus} for {s:?}");
            count += 1;
        }
    }
    Ok(format!("{count} shadows checked"))
}

fn criterion_7() -> Outcome {
    let l = limits();
    let mut ex = Explorer::new(l);
    let cat = catalog4()?;
    let k = cat.len();
    let mut le = vec![vec![false; k]; k];
    for a in 0..k {
        for b in 0..k {
            le[a][b] = ok(nfi_contains(&cat[a], &cat[b], &l))?;
        }
    }
    let mut chains = 0;
    for a in 0..k {
        for b in (0..k).filter(|&b| le[a][b]) {
            for c in (0..k).filter(|&c| le[b][c]) {
                for s in ok(ex.shadows(&cat[a]))?.iter() {
                    let direct = ok(reduce_shadow(s, &cat[c], &l))?;
                    let step = ok(reduce_shadow(&ok(reduce_shadow(s, &cat[b], &l))?, &cat[c], &l))?;
                    ensure!(direct == step, "{s:?} through {}", cat[b].label());
                }
                chains += 1;
            }
        }
    }
    let ml = ok(ex.main_line_limit(&cat))?;
    for (&(n, h), table) in &ml.edges {
        let (gn, gh) = (&ml.groups[n], &ml.groups[h]);
        let pos = |g: &[GtShadow], s: &GtShadow| g.iter().position(|t| t == s);
        for (i, a) in gn.iter().enumerate() {
            for (j, b) in gn.iter().enumerate() {
                let ab = pos(gn, &ok(compose_shadows(a, b, &l))?).ok_or("product left GT")?;
                let image = ok(compose_shadows(&gh[table[i]], &gh[table[j]], &l))?;
                ensure!(
                    Some(table[ab]) == pos(gh, &image),
                    "{} -> {} is not a homomorphism",
                    n,
                    h
                );
            }
        }
    }
    Ok(format!(
        "{chains} chains, {} reduction tables are homomorphisms",
        ml.edges.len()
    ))
}

fn criterion_8() -> Outcome {
    let l = limits();
    let mut ex = Explorer::new(l);
    let cat4 = catalog4()?;
    let mut non_isolated4 = 0;
    for n in &cat4 {
        non_isolated4 += usize::from(!ok(ex.is_isolated(n))?);
    }
    // the degree 4 catalog has no non-isolated object, so look further
    let wide = Limits {
        max_catalog_degree: 7,
        ..l
    };
    let cat7 = ok(catalog_search(7, &wide))?;
    let mut checked = Vec::new();
    for n in &cat7 {
        let mut ex = Explorer::new(l);
        if ok(ex.is_isolated(n))? {
            continue;
        }
        let c = match ex.connected_component(n) {
            Ok(c) => c,
            Err(_) => continue,
        };
        let d = ok(ex.diamond(n))?;
        ensure!(ok(ex.is_isolated(&d))?, "diamond of {} is not isolated", n.label());
        for o in &c.objects {
            ensure!(
                ok(nfi_contains(&d, o, &l))?,
                "diamond of {} is not below {}",
                n.label(),
                o.label()
            );
        }
        let dd = ok(ex.diamond(&d))?;
        ensure!(
            ok(nfi_equal(&dd, &d, &l))?,
            "diamond of {} is not idempotent",
            n.label()
        );
        checked.push(format!("{} (|PB3:N◇| = {})", n.label(), d.index_pb3()));
    }
    ensure!(!checked.is_empty(), "no non-isolated object found up to degree 7");
    let mut pairs = 0;
    for a in &cat4 {
        for b in &cat4 {
            let m = ok(nfi_intersect(&[a.clone(), b.clone()], &l))?;
            ensure!(
                ok(Explorer::new(l).is_isolated(&m))?,
                "{} ∩ {} is not isolated",
                a.label(),
                b.label()
            );
            pairs += 1;
        }
    }
    Ok(format!(
        "{non_isolated4} non-isolated up to degree 4; up to degree 7: {}; {pairs} isolated intersections",
        checked.join(", ")
    ))
}

fn criterion_9() -> Outcome {
    let l = limits();
    let mut count = 0;
    let mut indices = BTreeSet::new();
    for degree in [2usize, 3] {
        let elems: Vec<Permutation> = {
            let t = ok(Permutation::from_cycles(degree, &[&[0, 1]]))?;
            let cyc: Vec<u32> = (0..degree as u32).collect();
            let c = ok(Permutation::from_cycles(degree, &[&cyc]))?;
            ok(generate_group(&[t, c], 100))?.elements().to_vec()
        };
        for px in &elems {
            for py in &elems {
                let n = ok(from_f2_quotient(px, py, &l))?;
                let nf2 = ok(GenHom::new(Domain::F2, vec![n.x_image().clone(), n.y_image().clone()]))?;
                let psi = ok(GenHom::new(Domain::F2, vec![px.clone(), py.clone()]))?;
                ensure!(
                    ok(kernel_contained(&nf2, &psi, l.max_group_size))?,
                    "N_F2 ⊄ ker ψ for ({px}, {py})"
                );
                let mut ex = Explorer::new(l);
                let d = ok(ex.diamond(&n))?;
                ensure!(ok(ex.is_isolated(&d))?, "diamond of ({px}, {py}) is not isolated");
                indices.insert(n.index_pb3());
                count += 1;
            }
        }
    }
    Ok(format!("{count} homomorphisms, |PB3:N| in {indices:?}"))
}

fn criterion_10() -> Outcome {
    let tmp = ok(tempfile::TempDir::new())?;
    let mut docs = Vec::new();
    for threads in ["1", "4"] {
        let path = tmp.path().join(format!("catalog-{threads}.json"));
        let args = [
            "braidshadow",
            "--no-cache",
            "--threads",
            threads,
            "--json",
            path.to_str().unwrap(),
            "catalog",
            "--degree",
            "4",
        ];
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = braidshadow::run(args, &mut out, &mut err);
        ensure!(
            code == 0,
            "catalog exited with {code}: {}",
            String::from_utf8_lossy(&err)
        );
        docs.push(ok(fs::read(&path))?);
    }
    ensure!(docs[0] == docs[1], "JSON differs between 1 and 4 threads");
    let doc: CatalogDoc = ok(serde_json::from_slice(&docs[0]))?;
    let rows: Vec<(&str, usize, u64, usize, usize, bool)> = doc
        .objects
        .iter()
        .map(|o| {
            (
                o.label.as_str(),
                o.index_pb3,
                o.n_ord,
                o.index_f2,
                o.gt_count,
                o.isolated,
            )
        })
        .collect();
    let expected = vec![
        ("pb3", 1, 1, 1, 1, true),
        ("n001", 2, 2, 2, 2, true),
        ("n002", 3, 3, 3, 2, true),
        ("n003", 4, 2, 4, 2, true),
        ("n004", 12, 3, 12, 6, true),
    ];
    ensure!(rows == expected, "catalog rows {rows:?}");
    Ok(format!(
        "{} kernels, |GT| = [1, 2, 2, 2, 6], byte-identical across thread counts",
        rows.len()
    ))
}

fn criterion_11() -> Outcome {
    let l = limits();
    let mut ex = Explorer::new(l);
    let cat = ok(catalog_search(5, &l))?;
    let (mut fakes, mut survivors) = (0, 0);
    for h in &cat {
        if let Verdict::Fake(_) = ok(ex.genuine_to_depth(&identity_shadow(h), &cat))? {
            return Err(format!("identity of {} reported fake", h.label()));
        }
        for s in ok(ex.shadows(h))?.iter() {
            match ok(ex.genuine_to_depth(s, &cat))? {
                Verdict::Fake(cert) => {
                    ensure!(!cert.reduced_image.contains(s), "witness image contains {s:?}");
                    ensure!(
                        ok(ex.verify_fake_certificate(s, &cert))?,
                        "certificate for {s:?} does not verify"
                    );
                    fakes += 1;
                }
                Verdict::NotFakeToDepth(_) => survivors += 1,
            }
        }
    }
    Ok(format!(
        "{} objects; {fakes} fake with verified certificates, {survivors} not fake to depth",
        cat.len()
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("trivial quotient", criterion_1),
        ("oracle soundness", criterion_2),
        ("hexagon equivalence", criterion_3),
        ("surjectivity equivalence", criterion_4),
        ("groupoid axioms", criterion_5),
        ("morphism invariants", criterion_6),
        ("reduction functoriality", criterion_7),
        ("diamond", criterion_8),
        ("core of a free group quotient", criterion_9),
        ("determinism and regression", criterion_10),
        ("finite-depth genuineness", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail} [{t:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why} [{t:.2?}]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
