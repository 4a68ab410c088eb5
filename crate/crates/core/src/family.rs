//! Finite element sets and the parametric families they are drawn from.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Where an [`ElementSet`] came from.
#[derive(Clone, Debug, PartialEq)]
pub struct Provenance {
    /// `None` for explicit lists.
    pub family: Option<FamilySpec>,
    /// Number of generated values dropped as duplicates.
    pub collisions: usize,
}

/// A finite ordered set of distinct nonzero scalars.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementSet {
    field: Field,
    elements: Vec<Scalar>,
    provenance: Provenance,
}

impl ElementSet {
    /// Builds a set from an explicit list, keeping the first occurrence of
    /// each value.
    pub fn new(field: Field, elements: Vec<Scalar>) -> Result<Self> {
        Self::build(field, elements, None)
    }

    fn build(field: Field, values: Vec<Scalar>, family: Option<FamilySpec>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(values.len());
        let mut elements = Vec::with_capacity(values.len());
        let mut collisions = 0;
        for v in values {
            if v.field() != field {
                return Err(Error::FieldMismatch { expected: field, found: v.field() });
            }
            if v.is_zero() {
                return Err(Error::InvalidSet("zero element".into()));
            }
            if seen.insert(v.canonical_key()) {
                elements.push(v);
            } else {
                collisions += 1;
            }
        }
        if elements.is_empty() {
            return Err(Error::InvalidSet("empty set".into()));
        }
        Ok(ElementSet { field, elements, provenance: Provenance { family, collisions } })
    }

    pub fn parse_list(field: Field, items: &[&str]) -> Result<Self> {
        let values = items.iter().map(|s| Scalar::parse(s, field)).collect::<Result<Vec<_>>>()?;
        Self::new(field, values)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn elements(&self) -> &[Scalar] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// `{λx : x ∈ A}`.
    pub fn scaled(&self, lambda: &Scalar) -> Result<Self> {
        let values = self.elements.iter().map(|x| lambda.try_mul(x)).collect::<Result<Vec<_>>>()?;
        Self::new(self.field, values)
    }

    /// Reads a set file: either an explicit element list or a family.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: SetFile = serde_json::from_str(text)?;
        match file {
            SetFile::Family { family } => family.materialize(),
            SetFile::Explicit { field, elements } => {
                let refs: Vec<&str> = elements.iter().map(String::as_str).collect();
                Self::parse_list(field, &refs)
            }
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    /// Explicit-list JSON form; element order is preserved.
    pub fn to_json(&self) -> String {
        let file =
            SetFile::Explicit { field: self.field, elements: self.elements.iter().map(Scalar::to_string).collect() };
        serde_json::to_string(&file).expect("set file serializes")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SetFile {
    Family { family: FamilySpec },
    Explicit { field: Field, elements: Vec<String> },
}

/// Parametric description of a family of element sets.
///
/// Scalars are kept as text in the grammar accepted by [`Scalar::parse`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum FamilySpec {
    /// `{g^s : start <= s <= stop}`.
    Geometric {
        base: String,
        start: i64,
        stop: i64,
        #[serde(default = "default_field")]
        field: Field,
    },
    /// `{±g^s : 0 <= s < count}`, which has `2·count` elements.
    SignedGeometric {
        base: String,
        count: i64,
        #[serde(default = "default_field")]
        field: Field,
    },
    /// `{u·c : u ∈ {1, -1, i, -i}, c ∈ scales}` over `Q(i)`.
    GaussianUnitsScaled {
        scales: Vec<String>,
    },
    /// `sample_size` distinct exponent vectors drawn uniformly from the box
    /// `∏ [lo_j, hi_j]`, mapped to `∏ g_j^{e_j}`.
    LatticeBox {
        generators: Vec<String>,
        ranges: Vec<(i64, i64)>,
        sample_size: usize,
        seed: u64,
        #[serde(default = "default_field")]
        field: Field,
    },
    Explicit {
        field: Field,
        elements: Vec<String>,
    },
}

fn default_field() -> Field {
    Field::Q
}

const MAX_FAMILY_SIZE: u64 = 1 << 24;

impl FamilySpec {
    pub fn geometric(base: &str, start: i64, stop: i64) -> Self {
        FamilySpec::Geometric { base: base.into(), start, stop, field: Field::Q }
    }

    pub fn signed_geometric(base: &str, count: i64) -> Self {
        FamilySpec::SignedGeometric { base: base.into(), count, field: Field::Q }
    }

    pub fn field(&self) -> Field {
        match self {
            FamilySpec::Geometric { field, .. }
            | FamilySpec::SignedGeometric { field, .. }
            | FamilySpec::LatticeBox { field, .. }
            | FamilySpec::Explicit { field, .. } => *field,
            FamilySpec::GaussianUnitsScaled { .. } => Field::Qi,
        }
    }

    pub fn materialize(&self) -> Result<ElementSet> {
        let field = self.field();
        let values = match self {
            FamilySpec::Geometric { base, start, stop, .. } => {
                let g = nonzero_base(base, field)?;
                if stop < start {
                    return Err(Error::InvalidSet(format!("empty range {start}..={stop}")));
                }
                check_size((stop - start + 1) as u64)?;
                powers(&g, *start, *stop)?
            }
            FamilySpec::SignedGeometric { base, count, .. } => {
                let g = nonzero_base(base, field)?;
                if *count < 1 {
                    return Err(Error::InvalidSet("count must be positive".into()));
                }
                check_size(2 * *count as u64)?;
                powers(&g, 0, count - 1)?
                    .into_iter()
                    .flat_map(|p| {
                        let neg = -&p;
                        [p, neg]
                    })
                    .collect()
            }
            FamilySpec::GaussianUnitsScaled { scales } => {
                let units = [Scalar::one(field), Scalar::from_int(field, -1), Scalar::i(), -Scalar::i()];
                let mut out = Vec::with_capacity(4 * scales.len());
                for text in scales {
                    let c = Scalar::parse(text, field)?;
                    out.extend(units.iter().map(|u| u * &c));
                }
                out
            }
            FamilySpec::LatticeBox { generators, ranges, sample_size, seed, .. } => {
                lattice_box(field, generators, ranges, *sample_size, *seed)?
            }
            FamilySpec::Explicit { elements, .. } => {
                elements.iter().map(|s| Scalar::parse(s, field)).collect::<Result<Vec<_>>>()?
            }
        };
        ElementSet::build(field, values, Some(self.clone()))
    }
}

fn nonzero_base(text: &str, field: Field) -> Result<Scalar> {
    let g = Scalar::parse(text, field)?;
    if g.is_zero() {
        return Err(Error::InvalidSet("zero base".into()));
    }
    Ok(g)
}

fn check_size(n: u64) -> Result<()> {
    if n > MAX_FAMILY_SIZE {
        return Err(Error::InvalidSet(format!("family of {n} elements is too large")));
    }
    Ok(())
}

fn powers(g: &Scalar, start: i64, stop: i64) -> Result<Vec<Scalar>> {
    let mut cur = g.pow(start)?;
    let mut out = Vec::with_capacity((stop - start + 1).max(0) as usize);
    for _ in start..=stop {
        out.push(cur.clone());
        cur = &cur * g;
    }
    Ok(out)
}

fn lattice_box(
    field: Field,
    generators: &[String],
    ranges: &[(i64, i64)],
    sample_size: usize,
    seed: u64,
) -> Result<Vec<Scalar>> {
    if generators.is_empty() || generators.len() != ranges.len() {
        return Err(Error::InvalidSet("generators and ranges must be nonempty and of equal length".into()));
    }
    let gens = generators.iter().map(|g| nonzero_base(g, field)).collect::<Result<Vec<_>>>()?;
    let mut widths = Vec::with_capacity(ranges.len());
    let mut volume: u64 = 1;
    for &(lo, hi) in ranges {
        if hi < lo {
            return Err(Error::InvalidSet(format!("empty exponent range {lo}..={hi}")));
        }
        let w = (hi - lo + 1) as u64;
        volume = volume
            .checked_mul(w)
            .filter(|v| *v <= MAX_FAMILY_SIZE)
            .ok_or_else(|| Error::InvalidSet("exponent box too large".into()))?;
        widths.push(w);
    }
    let take = sample_size.min(volume as usize);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks = rand::seq::index::sample(&mut rng, volume as usize, take).into_vec();
    picks.sort_unstable();
    picks
        .into_iter()
        .map(|mut code| {
            let mut value = Scalar::one(field);
            for ((g, &(lo, _)), &w) in gens.iter().zip(ranges).zip(&widths) {
                let e = lo + (code as u64 % w) as i64;
                code /= w as usize;
                value = &value * &g.pow(e)?;
            }
            Ok(value)
        })
        .collect()
}

/// Coefficients of the homogeneous equations with the most solutions:
/// `(1,…,1,-1,…,-1)` for even `n`, and `(1^{k-1}, (-1)^{k+1}, 2)` for
/// `n = 2k+1`.
pub fn tight_equation_coeffs(n: usize, field: Field) -> Result<Vec<Scalar>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    let one = Scalar::one(field);
    let minus = Scalar::from_int(field, -1);
    let k = n / 2;
    let mut out = Vec::with_capacity(n);
    if n.is_multiple_of(2) {
        out.extend(std::iter::repeat_n(one, k));
        out.extend(std::iter::repeat_n(minus, k));
    } else {
        out.extend(std::iter::repeat_n(one, k - 1));
        out.extend(std::iter::repeat_n(minus, k + 1));
        out.push(Scalar::from_int(field, 2));
    }
    Ok(out)
}
