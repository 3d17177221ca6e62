//! On-disk documents. Every writer emits pretty JSON with a trailing newline
//! and goes through a temporary file, so readers never see half a document.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use braidshadow_core::groupoid::{ComponentReport, FakeCertificate, MainLine, Verdict};
use braidshadow_core::nfi::{new_nfi, NfiSubgroup};
use braidshadow_core::{GtShadow, Limits, Permutation};
use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA: u32 = 1;

/// A subgroup given by the images of `σ1, σ2` as 0-based image arrays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupFile {
    pub schema: u32,
    pub label: String,
    pub degree: usize,
    pub sigma1: Vec<u32>,
    pub sigma2: Vec<u32>,
}

impl SubgroupFile {
    pub fn of(n: &NfiSubgroup) -> Self {
        SubgroupFile {
            schema: SCHEMA,
            label: n.label().to_string(),
            degree: n.degree(),
            sigma1: n.sigma1().images().to_vec(),
            sigma2: n.sigma2().images().to_vec(),
        }
    }

    pub fn to_subgroup(&self, limits: &Limits) -> Result<NfiSubgroup, CliError> {
        if self.schema != SCHEMA {
            return Err(CliError::Schema(format!(
                "schema {} is not supported (expected {SCHEMA})",
                self.schema
            )));
        }
        if self.sigma1.len() != self.degree || self.sigma2.len() != self.degree {
            return Err(CliError::Schema(format!(
                "degree is {} but the image arrays have lengths {} and {}",
                self.degree,
                self.sigma1.len(),
                self.sigma2.len()
            )));
        }
        let perm = |v: &Vec<u32>, name: &str| {
            Permutation::from_images(v.clone()).map_err(|e| CliError::Schema(format!("{name}: {e}")))
        };
        let (s1, s2) = (perm(&self.sigma1, "sigma1")?, perm(&self.sigma2, "sigma2")?);
        Ok(new_nfi(s1, s2, &self.label, limits)?)
    }
}

/// Quotient data of one subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InfoDoc {
    pub label: String,
    pub content_id: String,
    pub degree: usize,
    pub n_ord: u64,
    pub b3_order: usize,
    pub index_pb3: usize,
    pub index_f2: usize,
    pub commutator_order: usize,
}

impl InfoDoc {
    pub fn of(n: &NfiSubgroup) -> Self {
        InfoDoc {
            label: n.label().to_string(),
            content_id: n.content_id().to_string(),
            degree: n.degree(),
            n_ord: n.n_ord(),
            b3_order: n.b3_order(),
            index_pb3: n.index_pb3(),
            index_f2: n.index_f2(),
            commutator_order: n.data().f2_commutator.order(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurviveDoc {
    pub shadow: ShadowDoc,
    pub target: String,
    pub into: String,
    pub survives: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShadowDoc {
    pub m: u64,
    pub f: String,
    pub f_perm: Vec<u32>,
    pub source_label: String,
}

impl ShadowDoc {
    pub fn of(s: &GtShadow, source_label: &str) -> Self {
        ShadowDoc {
            m: s.m(),
            f: s.f_word().to_string(),
            f_perm: s.f_elt().images().to_vec(),
            source_label: source_label.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShadowSetDoc {
    pub target: String,
    pub n_ord: u64,
    pub shadows: Vec<ShadowDoc>,
}

/// Summary of one object, as listed in component, catalog and main line
/// documents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectDoc {
    pub label: String,
    pub content_id: String,
    pub degree: usize,
    pub index_pb3: usize,
    pub index_f2: usize,
    pub n_ord: u64,
    pub gt_count: usize,
    pub isolated: bool,
    pub sigma1: Vec<u32>,
    pub sigma2: Vec<u32>,
}

impl ObjectDoc {
    pub fn of(n: &NfiSubgroup, gt_count: usize, isolated: bool) -> Self {
        ObjectDoc {
            label: n.label().to_string(),
            content_id: n.content_id().to_string(),
            degree: n.degree(),
            index_pb3: n.index_pb3(),
            index_f2: n.index_f2(),
            n_ord: n.n_ord(),
            gt_count,
            isolated,
            sigma1: n.sigma1().images().to_vec(),
            sigma2: n.sigma2().images().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismsDoc {
    pub source: String,
    pub target: String,
    pub shadows: Vec<ShadowDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    pub root: String,
    pub isolated: bool,
    pub objects: Vec<ObjectDoc>,
    pub morphisms: Vec<MorphismsDoc>,
    pub diamond: SubgroupFile,
}

impl ComponentDoc {
    pub fn of(c: &ComponentReport) -> Self {
        let label = |i: usize| c.objects[i].label().to_string();
        let mut gt_count = vec![0; c.objects.len()];
        for ((_, t), v) in &c.morphisms {
            gt_count[*t] += v.len();
        }
        ComponentDoc {
            root: label(c.root),
            isolated: c.isolated,
            objects: c
                .objects
                .iter()
                .enumerate()
                .map(|(i, n)| ObjectDoc::of(n, gt_count[i], c.morphisms.keys().all(|&(s, t)| t != i || s == i)))
                .collect(),
            morphisms: c
                .morphisms
                .iter()
                .map(|(&(s, t), v)| MorphismsDoc {
                    source: label(s),
                    target: label(t),
                    shadows: v.iter().map(|x| ShadowDoc::of(x, &label(s))).collect(),
                })
                .collect(),
            diamond: SubgroupFile::of(&c.diamond),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogDoc {
    pub schema: u32,
    pub max_degree: usize,
    pub objects: Vec<ObjectDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub finer: String,
    pub coarser: String,
    /// `table[i]` is the index in the coarser group of the reduction of
    /// element `i` of the finer group.
    pub table: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MainLineDoc {
    pub objects: Vec<String>,
    pub groups: Vec<ShadowSetDoc>,
    pub edges: Vec<EdgeDoc>,
    pub limit_size: usize,
    pub limit: Vec<Vec<usize>>,
}

impl MainLineDoc {
    pub fn of(ml: &MainLine) -> Self {
        let label = |i: usize| ml.objects[i].label().to_string();
        MainLineDoc {
            objects: (0..ml.objects.len()).map(label).collect(),
            groups: ml
                .groups
                .iter()
                .enumerate()
                .map(|(i, g)| ShadowSetDoc {
                    target: label(i),
                    n_ord: ml.objects[i].n_ord(),
                    shadows: g.iter().map(|s| ShadowDoc::of(s, &label(i))).collect(),
                })
                .collect(),
            edges: ml
                .edges
                .iter()
                .map(|(&(a, b), t)| EdgeDoc {
                    finer: label(a),
                    coarser: label(b),
                    table: t.clone(),
                })
                .collect(),
            limit_size: ml.limit.len(),
            limit: ml.limit.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictDoc {
    pub shadow: ShadowDoc,
    pub target: String,
    pub verdict: String,
    pub checked: Vec<String>,
    pub witness: Option<SubgroupFile>,
    pub reduced_image: Vec<ShadowDoc>,
}

impl VerdictDoc {
    pub fn of(s: &GtShadow, v: &Verdict) -> Self {
        let target = s.target().label().to_string();
        let shadow = ShadowDoc::of(s, "");
        match v {
            Verdict::Fake(FakeCertificate { witness, reduced_image }) => VerdictDoc {
                shadow,
                verdict: "fake".into(),
                checked: vec![witness.label().to_string()],
                witness: Some(SubgroupFile::of(witness)),
                reduced_image: reduced_image.iter().map(|t| ShadowDoc::of(t, "")).collect(),
                target,
            },
            Verdict::NotFakeToDepth(checked) => VerdictDoc {
                shadow,
                verdict: "not-fake-to-depth".into(),
                checked: checked.iter().map(|n| n.label().to_string()).collect(),
                witness: None,
                reduced_image: Vec::new(),
                target,
            },
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialise");
    s.push('\n');
    s
}

pub fn parse_json<T: DeserializeOwned>(text: &str, path: &Path) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_json(&text, path)
}

pub fn load_subgroup(path: &Path, limits: &Limits) -> Result<NfiSubgroup, CliError> {
    read_json::<SubgroupFile>(path)?.to_subgroup(limits)
}

pub fn save_subgroup(path: &Path, n: &NfiSubgroup) -> Result<(), CliError> {
    write_atomic(path, to_json(&SubgroupFile::of(n)).as_bytes())
}

/// Loads every `*.json` subgroup file in `dir`, in file name order.
pub fn load_catalog_dir(dir: &Path, limits: &Limits) -> Result<Vec<NfiSubgroup>, CliError> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| CliError::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths.iter().map(|p| load_subgroup(p, limits)).collect()
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}
