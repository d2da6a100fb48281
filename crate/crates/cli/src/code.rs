//! Resolving `--code` arguments: a descriptor JSON file, or a family spec
//! `bch:E:M`, `melas:M`, `generic:N:G`.

use std::path::Path;

use burstcover::cyclic::{make_bch_with, make_cyclic_code_with, make_melas_with, CodeDescriptor, CyclicCode};
use burstcover::gf2::BinaryPolynomial;

use crate::CliError;

pub fn resolve(spec: &str, modulus: Option<&str>) -> Result<CyclicCode, CliError> {
    let modulus = modulus.map(BinaryPolynomial::parse).transpose()?;
    if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| CliError::usage(format!("{spec}: {e}")))?;
        let mut desc: CodeDescriptor =
            serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{spec}: {e}")))?;
        if let Some(m) = modulus {
            desc.modulus_hex = Some(m.to_hex());
        }
        return Ok(CyclicCode::from_descriptor(&desc)?);
    }
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| CliError::usage(format!("bad number `{s}` in `{spec}`")));
    let code = match parts.as_slice() {
        ["bch", e, m] => make_bch_with(num(e)?, num(m)?, modulus)?,
        ["melas", m] => make_melas_with(num(m)?, modulus)?,
        ["generic", n, g] => make_cyclic_code_with(num(n)?, BinaryPolynomial::parse(g)?, modulus)?,
        _ => {
            return Err(CliError::usage(format!(
                "`{spec}` is neither a descriptor file nor bch:E:M, melas:M, generic:N:G"
            )))
        }
    };
    Ok(code)
}
