//! JSON report shapes. Scalars are strings so rationals survive exactly;
//! field order here is the key order on output.

use canform::{
    ContraBlock, ContraReport, Field, JordanForm, JordanReport, Matrix, Polynomial, PrimePowerFactorization,
    RankProfile,
};
use serde::Serialize;

pub type Rows = Vec<Vec<String>>;

pub fn rows(m: &Matrix) -> Rows {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect())
        .collect()
}

pub fn coeffs(p: &Polynomial) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

#[derive(Debug, Serialize)]
pub struct BlockJson {
    /// Constant term first.
    pub prime: Vec<String>,
    pub power: usize,
}

fn blocks(form: &JordanForm) -> Vec<BlockJson> {
    form.blocks()
        .iter()
        .map(|b| BlockJson {
            prime: coeffs(&b.prime),
            power: b.power,
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct JordanJson {
    pub field: String,
    pub n: usize,
    pub blocks: Vec<BlockJson>,
    pub form: Rows,
    pub transform: Rows,
}

impl JordanJson {
    pub fn new(field: Field, r: &JordanReport) -> Self {
        JordanJson {
            field: field.to_string(),
            n: r.form_matrix.rows(),
            blocks: blocks(&r.form),
            form: rows(&r.form_matrix),
            transform: rows(&r.transform),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MinpolyJson {
    pub field: String,
    pub minimal_polynomial: Vec<String>,
    pub text: String,
}

#[derive(Debug, Serialize)]
pub struct FactorEntryJson {
    pub prime: Vec<String>,
    pub text: String,
    pub multiplicity: usize,
}

#[derive(Debug, Serialize)]
pub struct FactorJson {
    pub field: String,
    pub input: Vec<String>,
    pub unit: String,
    pub factors: Vec<FactorEntryJson>,
}

impl FactorJson {
    pub fn new(input: &Polynomial, f: &PrimePowerFactorization) -> Self {
        FactorJson {
            field: input.field().to_string(),
            input: coeffs(input),
            unit: f.unit.to_string(),
            factors: f
                .factors
                .iter()
                .map(|(p, k)| FactorEntryJson {
                    prime: coeffs(p),
                    text: p.to_string(),
                    multiplicity: *k,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SimilarJson {
    pub field: String,
    pub similar: bool,
    pub blocks_a: Vec<BlockJson>,
    pub blocks_b: Vec<BlockJson>,
}

impl SimilarJson {
    pub fn new(field: Field, similar: bool, a: &JordanForm, b: &JordanForm) -> Self {
        SimilarJson {
            field: field.to_string(),
            similar,
            blocks_a: blocks(a),
            blocks_b: blocks(b),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ContraBlockJson {
    pub kind: &'static str,
    /// Rows of the block's `A_i`.
    pub m_i: usize,
    /// Columns of the block's `A_i`.
    pub n_i: usize,
    pub size: usize,
    pub jordan: Option<Vec<BlockJson>>,
}

impl ContraBlockJson {
    fn new(b: &ContraBlock) -> Self {
        let (m_i, n_i) = b.a_shape();
        let jordan = match b {
            ContraBlock::Invertible(j) => Some(blocks(j)),
            _ => None,
        };
        ContraBlockJson {
            kind: b.kind(),
            m_i,
            n_i,
            size: b.size(),
            jordan,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RankProfileJson {
    pub t: usize,
    pub a_chain: Vec<usize>,
    pub b_chain: Vec<usize>,
}

impl From<&RankProfile> for RankProfileJson {
    fn from(r: &RankProfile) -> Self {
        RankProfileJson {
            t: r.t,
            a_chain: r.a_chain.clone(),
            b_chain: r.b_chain.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ContraJson {
    pub m: usize,
    pub n: usize,
    pub field: String,
    pub blocks: Vec<ContraBlockJson>,
    #[serde(rename = "canonical_A")]
    pub canonical_a: Rows,
    #[serde(rename = "canonical_B")]
    pub canonical_b: Rows,
    #[serde(rename = "S")]
    pub s: Rows,
    #[serde(rename = "T")]
    pub t: Rows,
    pub rank_profile: RankProfileJson,
}

impl ContraJson {
    pub fn new(field: Field, r: &ContraReport, profile: &RankProfile) -> Self {
        ContraJson {
            m: r.s.rows(),
            n: r.t.rows(),
            field: field.to_string(),
            blocks: r.blocks.iter().map(ContraBlockJson::new).collect(),
            canonical_a: rows(&r.canonical_a),
            canonical_b: rows(&r.canonical_b),
            s: rows(&r.s),
            t: rows(&r.t),
            rank_profile: profile.into(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ContraEquivJson {
    pub field: String,
    pub equivalent: bool,
    pub products_similar: bool,
    pub rank_profile_first: RankProfileJson,
    pub rank_profile_second: RankProfileJson,
}
