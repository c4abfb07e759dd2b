//! JSON spec files with coefficient CSVs stored alongside.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Family, MaassSpec, Residues};
use crate::characters::{CharacterGroup, CharacterRef, Parity};
use crate::error::{Error, Result};
use crate::lseries::CoeffSeq;
use crate::report::cjson;
use crate::specfun::SpectralParam;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Growth {
    #[serde(rename = "C")]
    pub c: f64,
    pub sigma: f64,
}

/// On-disk form of a [`MaassSpec`]. Coefficient paths are relative to the
/// JSON file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecFile {
    pub level: u64,
    pub parity: u8,
    #[serde(with = "cjson")]
    pub nu: Complex64,
    pub chi: CharacterRef,
    pub coeff_file: String,
    /// Coefficients of `g`; when absent `b = a`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeff_file_b: Option<String>,
    pub growth: Growth,
    pub residues: Residues,
    #[serde(default)]
    pub family: Family,
}

/// Reads `n,re,im` rows; `n` must run over `1, 2, …` without gaps.
pub fn read_coeff_csv(path: &Path) -> Result<Vec<Complex64>> {
    let mut rdr = csv::Reader::from_path(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let headers = rdr.headers()?.clone();
    if headers.iter().map(str::trim).collect::<Vec<_>>() != ["n", "re", "im"] {
        return Err(Error::Format(format!("{}: header must be n,re,im", path.display())));
    }
    let mut out = Vec::new();
    for (i, row) in rdr.deserialize::<(u64, f64, f64)>().enumerate() {
        let (n, re, im) = row?;
        if n != i as u64 + 1 {
            return Err(Error::Format(format!("{}: expected n = {}, found {n}", path.display(), i + 1)));
        }
        out.push(Complex64::new(re, im));
    }
    if out.is_empty() {
        return Err(Error::Format(format!("{}: no coefficients", path.display())));
    }
    Ok(out)
}

pub fn write_coeff_csv(path: &Path, values: &[Complex64]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    w.write_record(["n", "re", "im"])?;
    for (i, v) in values.iter().enumerate() {
        w.write_record([(i + 1).to_string(), format!("{:e}", v.re), format!("{:e}", v.im)])?;
    }
    w.flush()?;
    Ok(())
}

fn sibling(json: &Path, name: &str) -> PathBuf {
    json.parent().map_or_else(|| PathBuf::from(name), |d| d.join(name))
}

pub fn load_spec(path: &Path) -> Result<MaassSpec> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let file: SpecFile = serde_json::from_str(&text)?;
    let chi = CharacterGroup::new(file.chi.modulus)?.character(&file.chi.exponent_vector)?;
    let a_vals = read_coeff_csv(&sibling(path, &file.coeff_file))?;
    let a = CoeffSeq::new(a_vals, file.growth.sigma, file.growth.c)?;
    let b = match &file.coeff_file_b {
        Some(name) => CoeffSeq::new(read_coeff_csv(&sibling(path, name))?, file.growth.sigma, file.growth.c)?,
        None => a.clone(),
    };
    if file.parity > 1 {
        return Err(Error::Format(format!("parity must be 0 or 1, got {}", file.parity)));
    }
    MaassSpec::new(
        file.level,
        chi,
        Parity::from_bit(file.parity),
        SpectralParam::new(file.nu)?,
        a,
        b,
        file.residues,
        file.family,
    )
}

/// Writes `<stem>.json` plus `<stem>_a.csv` (and `<stem>_b.csv` when `b ≠ a`).
pub fn save_spec(spec: &MaassSpec, path: &Path) -> Result<()> {
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .ok_or_else(|| Error::Io(format!("bad spec path {}", path.display())))?;
    let a_name = format!("{stem}_a.csv");
    write_coeff_csv(&sibling(path, &a_name), spec.a.values())?;
    let b_name = if spec.b == spec.a {
        None
    } else {
        let name = format!("{stem}_b.csv");
        write_coeff_csv(&sibling(path, &name), spec.b.values())?;
        Some(name)
    };
    let file = SpecFile {
        level: spec.level,
        parity: spec.eps(),
        nu: spec.nu.nu(),
        chi: CharacterRef { modulus: spec.chi.modulus(), exponent_vector: spec.chi.exponent_vector().to_vec() },
        coeff_file: a_name,
        coeff_file_b: b_name,
        growth: Growth { c: spec.a.bound().max(spec.b.bound()), sigma: spec.a.sigma() },
        residues: spec.residues,
        family: spec.family,
    };
    fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}
