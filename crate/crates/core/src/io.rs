//! JSON files for functions and spectra. Complex values are `[re, im]`.

use std::fs;
use std::path::Path;

use indexmap::IndexMap;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{FamilySpec, FamilyTag};
use crate::fourier::{FourierCoefficients, InducedRepSet};
use crate::harmonics::CMatrix;
use crate::structure::{Basis, FunctionOnS, SemigroupStructure};

/// `{"family", "n", "basis", "values": {"<element>": [re, im]}}`; elements
/// missing from `values` are zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctionFile {
    pub family: FamilyTag,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label_group: Option<String>,
    pub basis: Basis,
    pub values: IndexMap<String, [f64; 2]>,
}

/// `{"family", "n", "blocks": [{"class", "rep", "rows", "cols", "data"}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumFile {
    pub family: FamilyTag,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label_group: Option<String>,
    pub blocks: Vec<SpectrumBlock>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumBlock {
    pub class: usize,
    pub rep: String,
    /// Idempotent ids indexing the block rows.
    pub rows: Vec<usize>,
    /// Idempotent ids indexing the block columns.
    pub cols: Vec<usize>,
    /// The full `r·d × r·d` matrix, row-major.
    pub data: Vec<[f64; 2]>,
}

fn family_of(s: &SemigroupStructure) -> Result<&FamilySpec> {
    s.family()
        .ok_or_else(|| Error::Contract("files are only written for built-in families".into()))
}

fn check_family(s: &SemigroupStructure, family: FamilyTag, n: usize, label_group: &Option<String>) -> Result<()> {
    let spec = family_of(s)?;
    if spec.family != family || spec.n != n || &spec.label_group != label_group {
        let found = FamilySpec {
            family,
            n,
            label_group: label_group.clone(),
        };
        return Err(Error::Contract(format!("file is for {found}, semigroup is {spec}")));
    }
    Ok(())
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn complex(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

impl FunctionFile {
    /// Every element, in id order.
    pub fn from_function(s: &SemigroupStructure, f: &FunctionOnS) -> Result<Self> {
        let spec = family_of(s)?;
        if f.len() != s.size() {
            return Err(Error::Contract(format!(
                "function has {} values, |S| = {}",
                f.len(),
                s.size()
            )));
        }
        Ok(FunctionFile {
            family: spec.family,
            n: spec.n,
            label_group: spec.label_group.clone(),
            basis: f.basis,
            values: f
                .values
                .iter()
                .enumerate()
                .map(|(id, &z)| (s.encode(id), pair(z)))
                .collect(),
        })
    }

    pub fn spec(&self) -> FamilySpec {
        FamilySpec {
            family: self.family,
            n: self.n,
            label_group: self.label_group.clone(),
        }
    }

    pub fn to_function(&self, s: &SemigroupStructure) -> Result<FunctionOnS> {
        check_family(s, self.family, self.n, &self.label_group)?;
        let mut f = FunctionOnS::zeros(self.basis, s.size());
        for (key, &v) in &self.values {
            f.values[s.parse_element(key)?] = complex(v);
        }
        Ok(f)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }
}

impl SpectrumFile {
    pub fn from_coefficients(s: &SemigroupStructure, y: &InducedRepSet, c: &FourierCoefficients) -> Result<Self> {
        let spec = family_of(s)?;
        c.check_shape(y)?;
        let blocks = y
            .reps()
            .iter()
            .zip(&c.blocks)
            .map(|(rep, m)| {
                let ids = s.classes()[rep.class].idempotents().to_vec();
                let mut data = Vec::with_capacity(m.len());
                for i in 0..m.nrows() {
                    for j in 0..m.ncols() {
                        data.push(pair(m[(i, j)]));
                    }
                }
                SpectrumBlock {
                    class: rep.class,
                    rep: rep.label.clone(),
                    rows: ids.clone(),
                    cols: ids,
                    data,
                }
            })
            .collect();
        Ok(SpectrumFile {
            family: spec.family,
            n: spec.n,
            label_group: spec.label_group.clone(),
            blocks,
        })
    }

    pub fn spec(&self) -> FamilySpec {
        FamilySpec {
            family: self.family,
            n: self.n,
            label_group: self.label_group.clone(),
        }
    }

    pub fn to_coefficients(&self, s: &SemigroupStructure, y: &InducedRepSet) -> Result<FourierCoefficients> {
        check_family(s, self.family, self.n, &self.label_group)?;
        if self.blocks.len() != y.len() {
            return Err(Error::Contract(format!(
                "file has {} blocks, rep set has {} induced reps",
                self.blocks.len(),
                y.len()
            )));
        }
        let mut blocks = Vec::with_capacity(y.len());
        for (b, rep) in self.blocks.iter().zip(y.reps()) {
            let ids = s.classes()[rep.class].idempotents();
            if b.class != rep.class || b.rep != rep.label || b.rows != ids || b.cols != ids {
                return Err(Error::Contract(format!(
                    "block (class {}, rep {}) does not match induced rep (class {}, rep {})",
                    b.class, b.rep, rep.class, rep.label
                )));
            }
            let dim = rep.dim();
            if b.data.len() != dim * dim {
                return Err(Error::Contract(format!(
                    "block (class {}, rep {}) has {} entries, expected {}",
                    b.class,
                    b.rep,
                    b.data.len(),
                    dim * dim
                )));
            }
            blocks.push(CMatrix::from_row_iterator(dim, dim, b.data.iter().map(|&p| complex(p))));
        }
        Ok(FourierCoefficients { blocks })
    }

    pub fn read(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }
}
