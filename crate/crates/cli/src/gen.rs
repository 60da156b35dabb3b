//! `ogp gen`: sample one instance and print it in its text format.

use std::collections::BTreeMap;

use ogp_core::generators::{gen_er, gen_hypergraph, gen_pspin, gen_regular};
use ogp_core::SeededRng;

use crate::CliError;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn keys_for(kind: &str) -> Option<&'static [&'static str]> {
    match kind {
        "regular" | "er" => Some(&["n", "d", "seed"]),
        "hypergraph" => Some(&["n", "d", "k", "seed"]),
        "pspin" => Some(&["n", "p", "seed"]),
        _ => None,
    }
}

/// Sample an instance of `kind` from `key=value` arguments. A seed given
/// by flag overrides a `seed=` argument.
pub fn generate(kind: &str, args: &[String], seed_flag: Option<u64>) -> Result<String, CliError> {
    let allowed = keys_for(kind)
        .ok_or_else(|| invalid(format!("unknown instance kind `{kind}` (regular, er, hypergraph, pspin)")))?;
    let mut kv = BTreeMap::new();
    for a in args {
        let (k, v) = a
            .split_once('=')
            .ok_or_else(|| invalid(format!("expected key=value, got `{a}`")))?;
        if !allowed.contains(&k) {
            return Err(invalid(format!("unknown key `{k}` for `gen {kind}` (allowed: {})", allowed.join(", "))));
        }
        if kv.insert(k.to_string(), v.to_string()).is_some() {
            return Err(invalid(format!("duplicate key `{k}`")));
        }
    }
    fn field<T: std::str::FromStr>(kv: &BTreeMap<String, String>, k: &str) -> Result<T, CliError> {
        let v = kv.get(k).ok_or_else(|| invalid(format!("missing `{k}=`")))?;
        v.parse().map_err(|_| invalid(format!("bad value for `{k}`: `{v}`")))
    }
    let seed = match seed_flag {
        Some(s) => s,
        None if kv.contains_key("seed") => field(&kv, "seed")?,
        None => 0,
    };
    let mut rng = SeededRng::new(seed);
    let core = |e: ogp_core::Error| invalid(e.to_string());
    let text = match kind {
        "regular" => gen_regular(field(&kv, "n")?, field(&kv, "d")?, &mut rng).map_err(core)?.to_text(),
        "er" => gen_er(field(&kv, "n")?, field(&kv, "d")?, &mut rng).map_err(core)?.to_text(),
        "hypergraph" => gen_hypergraph(field(&kv, "n")?, field(&kv, "d")?, field(&kv, "k")?, &mut rng)
            .map_err(core)?
            .to_text(),
        _ => gen_pspin(field(&kv, "n")?, field(&kv, "p")?, &mut rng).map_err(core)?.to_text(),
    };
    Ok(text)
}
