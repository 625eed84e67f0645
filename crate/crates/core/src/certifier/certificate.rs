use std::fmt;
use std::str::FromStr;

use rug::Rational;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::analytic::{eventual_dominance_certificate, FamilyModel, Verdict, DEFAULT_PRECISION, PRECISION_CAP};
use crate::error::{Error, Result};
use crate::modular::{lpos_set, omega_of};
use crate::qseries::{expand_product, registered, ProductSpec, Sign};

pub const SCHEMA_VERSION: u32 = 1;

/// The three sign statements that get a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// `A(5n) < 0` for `n ≥ 1`
    A5n,
    /// `B(5n) < 0` for `n ≥ 1`
    B5n,
    /// `D(5n+1) > 0` for `n ≥ 0`
    D5n1,
}

impl Target {
    pub const ALL: [Target; 3] = [Target::A5n, Target::B5n, Target::D5n1];

    pub fn name(self) -> &'static str {
        match self {
            Target::A5n => "A5n",
            Target::B5n => "B5n",
            Target::D5n1 => "D5n1",
        }
    }

    pub fn spec_name(self) -> &'static str {
        match self {
            Target::A5n => "A",
            Target::B5n => "B",
            Target::D5n1 => "D",
        }
    }

    pub fn family(self) -> FamilyModel {
        match self {
            Target::A5n => FamilyModel::a(),
            Target::B5n => FamilyModel::b(),
            Target::D5n1 => FamilyModel::d(),
        }
    }

    pub fn residue(self) -> u64 {
        match self {
            Target::D5n1 => 1,
            _ => 0,
        }
    }

    pub fn sign(self) -> Sign {
        match self {
            Target::D5n1 => Sign::Positive,
            _ => Sign::Negative,
        }
    }

    /// First index of the claim.
    pub fn first_index(self) -> u64 {
        match self {
            Target::D5n1 => 1,
            _ => 5,
        }
    }

    /// Last index checked exactly; also the truncation order.
    pub fn exact_limit(self) -> u64 {
        match self {
            Target::D5n1 => 19_501,
            _ => 1_000,
        }
    }

    /// Index from which dominance takes over.
    pub fn n0(self) -> u64 {
        match self {
            Target::D5n1 => 19_001,
            _ => 801,
        }
    }

    pub fn claim(self) -> String {
        let s = if self.sign() == Sign::Negative { "<" } else { ">" };
        match self {
            Target::D5n1 => format!("D(5n+1) {s} 0 for all n >= 0"),
            t => format!("{}(5n) {s} 0 for all n >= 1", t.spec_name()),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect();
        match norm.as_str() {
            "A5n" | "A5n0" => Ok(Target::A5n),
            "B5n" | "B5n0" => Ok(Target::B5n),
            "D5n1" | "D5n10" => Ok(Target::D5n1),
            _ => Err(Error::Usage(format!("unknown target `{s}`; expected A5n, B5n or D5n1"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecSection {
    pub name: String,
    pub factors: serde_json::Value,
    /// sha256 of the spec's JSON form
    pub digest: String,
    pub omega: String,
    pub lpos: Vec<(i64, i64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteSection {
    pub lo: u64,
    pub hi: u64,
    pub trunc: u64,
    pub all_ok: bool,
    pub exceptions: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticSection {
    pub n0: u64,
    pub precision_bits: u32,
    pub main_lo: String,
    pub bound_hi: String,
    pub monotone_ok: bool,
    pub family: String,
    pub residue: u64,
    pub verdict: Verdict,
    /// Sign of the main term on the residue class: `-sign(cos(π(αr + β)))`.
    pub main_sign: Sign,
    pub class_cosine: String,
    pub lower_bound_lo: String,
    pub wang_range_ok: bool,
    pub claim: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct MetaSection {
    pub version: String,
    pub seed: u64,
    pub hash: String,
    pub valid: bool,
    pub notes: Vec<String>,
}

/// A reproducible record that a sign statement holds for every index:
/// exactly on `finite`, and by dominance of the main term from
/// `asymptotic.n0` on. `meta.hash` is the sha256 of the JSON with the hash
/// field blank.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub target: String,
    pub spec: SpecSection,
    pub finite: FiniteSection,
    pub asymptotic: AsymptoticSection,
    pub meta: MetaSection,
}

/// Result of a certification attempt.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Certified,
    SignViolation,
    DominanceUnknown,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Certified => 0,
            Status::SignViolation => 2,
            Status::DominanceUnknown => 3,
        }
    }
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    fn content_hash(&self) -> String {
        let mut blank = self.clone();
        blank.meta.hash.clear();
        hex::encode(Sha256::digest(blank.to_json().as_bytes()))
    }

    /// Recomputes the content hash and compares.
    pub fn hash_ok(&self) -> bool {
        self.meta.hash == self.content_hash()
    }

    /// Exact range reaches the dominance regime.
    pub fn no_gap(&self) -> bool {
        self.finite.hi >= self.asymptotic.n0
    }

    pub fn status(&self) -> Status {
        if !self.finite.all_ok {
            Status::SignViolation
        } else if self.asymptotic.verdict != Verdict::True || !self.asymptotic.monotone_ok {
            Status::DominanceUnknown
        } else {
            Status::Certified
        }
    }
}

/// Settings of a certification run.
#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub precision: u32,
    pub cap: u32,
    pub seed: u64,
    /// Replaces the registered product; used to exercise the failure path.
    pub spec_override: Option<ProductSpec>,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            precision: DEFAULT_PRECISION,
            cap: PRECISION_CAP,
            seed: 0,
            spec_override: None,
        }
    }
}

/// Certifies `target` with default options.
pub fn certify(target: Target) -> Result<Certificate> {
    certify_with(target, &CertifyOptions::default())
}

/// Exact check of the residue class up to [`Target::exact_limit`], then an
/// eventual dominance certificate at [`Target::n0`].
///
/// Sign violations and an undecided dominance do not raise errors: the
/// certificate is returned with `meta.valid = false`, and
/// [`Certificate::status`] tells which part failed.
pub fn certify_with(target: Target, opts: &CertifyOptions) -> Result<Certificate> {
    let spec = match &opts.spec_override {
        Some(s) => s.clone(),
        None => registered(target.spec_name())?,
    };
    let trunc = target.exact_limit();
    let series = expand_product(&spec, trunc as usize);
    let exceptions: Vec<u64> = series
        .slice_signs(target.residue() as i64, 5, target.first_index() as usize, trunc as usize)?
        .into_iter()
        .filter(|(_, s)| *s != target.sign())
        .map(|(i, _)| i as u64)
        .collect();

    let model = target.family();
    let ev = eventual_dominance_certificate(&model, target.residue(), target.n0(), opts.precision, opts.cap)?;
    let cosine = model.class_cosine(target.residue(), ev.precision_bits);
    let main_sign = if cosine.is_positive().is_true() {
        Sign::Negative
    } else if cosine.is_negative().is_true() {
        Sign::Positive
    } else {
        Sign::Zero
    };
    let sign_ok = main_sign == target.sign();

    let spec_json = spec.to_json();
    let omega = omega_of(&spec);
    let mut notes = vec![format!("claim: {}", target.claim())];
    if target == Target::D5n1 {
        notes.push(
            "n in [0, 3800] reaches index 19001, one past the first 19000 coefficients; \
             the exact range here runs to index 19501"
                .into(),
        );
    }
    if !sign_ok {
        notes.push(format!("main term sign {main_sign} does not match the claim"));
    }

    let finite = FiniteSection {
        lo: target.first_index(),
        hi: trunc,
        trunc,
        all_ok: exceptions.is_empty(),
        exceptions,
    };
    let asymptotic = AsymptoticSection {
        n0: ev.n0,
        precision_bits: ev.precision_bits,
        main_lo: ev.main_lo,
        bound_hi: ev.bound_hi,
        monotone_ok: ev.monotone_ok && ev.wang_range_ok,
        family: ev.family,
        residue: ev.residue,
        verdict: if sign_ok { ev.verdict } else { Verdict::False },
        main_sign,
        class_cosine: format!("[{}, {}]", cosine.lo_string(20), cosine.hi_string(20)),
        lower_bound_lo: ev.lower_bound_lo,
        wang_range_ok: ev.wang_range_ok,
        claim: ev.claim,
    };
    let mut cert = Certificate {
        schema_version: SCHEMA_VERSION,
        target: target.name().into(),
        spec: SpecSection {
            name: if opts.spec_override.is_some() { "custom".into() } else { target.spec_name().into() },
            factors: serde_json::from_str(&spec_json)?,
            digest: hex::encode(Sha256::digest(spec_json.as_bytes())),
            omega: omega.value.to_string(),
            lpos: lpos_set(&spec)?,
        },
        finite,
        asymptotic,
        meta: MetaSection {
            version: env!("CARGO_PKG_VERSION").into(),
            seed: opts.seed,
            hash: String::new(),
            valid: false,
            notes,
        },
    };
    cert.meta.valid = cert.status() == Status::Certified && cert.no_gap();
    cert.meta.hash = cert.content_hash();
    Ok(cert)
}

/// `Ω` as recorded in a certificate, parsed back.
pub fn recorded_omega(cert: &Certificate) -> Result<Rational> {
    cert.spec
        .omega
        .parse::<Rational>()
        .map_err(|e| Error::Domain(format!("bad omega in certificate: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_names() {
        for t in Target::ALL {
            assert_eq!(t.name().parse::<Target>().unwrap(), t);
        }
        assert_eq!("A5n<0".parse::<Target>().unwrap(), Target::A5n);
        assert_eq!("D5n+1>0".parse::<Target>().unwrap(), Target::D5n1);
        assert!("C5n".parse::<Target>().is_err());
    }

    #[test]
    fn a_certifies_and_hash_is_stable() {
        let c = certify(Target::A5n).unwrap();
        assert_eq!(c.status(), Status::Certified, "{}", c.to_json());
        assert!(c.meta.valid && c.no_gap() && c.hash_ok());
        let again = certify(Target::A5n).unwrap();
        assert_eq!(c.to_json(), again.to_json());
    }

    #[test]
    fn wrong_product_is_a_violation() {
        let opts = CertifyOptions {
            spec_override: Some(registered("c").unwrap()),
            ..Default::default()
        };
        let c = certify_with(Target::A5n, &opts).unwrap();
        assert_eq!(c.status(), Status::SignViolation);
        assert!(!c.meta.valid);
        assert!(!c.finite.exceptions.is_empty());
        assert!(c.hash_ok());
    }
}
