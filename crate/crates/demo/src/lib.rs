//! WebAssembly bindings for the static page in `www/`. Each export takes
//! text input and returns a JSON string; errors come back as messages.

use qtrep::diagrams::{canonical_decomposition, concat, Diagram};
use qtrep::lr::{b_coeff, f_coeff};
use qtrep::partitions::enumerate_strict;
use qtrep::trep::{socle_mult, ReportEntry};
use qtrep::{Bipartition, StrictPartition};
use serde_json::json;
use wasm_bindgen::prelude::*;

const MAX_DEGREE: usize = 6;

fn parse<T: std::str::FromStr<Err = qtrep::Error>>(what: &str, text: &str) -> Result<T, String> {
    text.parse().map_err(|e| format!("{what}: {e}"))
}

/// All nonzero `f^μ_{λν}` as `{"entries": [{"mu", "b", "f", "total"}]}`.
pub fn lr_table_json(lambda: &str, nu: &str) -> Result<String, String> {
    let lambda: StrictPartition = parse("λ", lambda)?;
    let nu: StrictPartition = parse("ν", nu)?;
    let degree = lambda.size() + nu.size();
    if degree > MAX_DEGREE {
        return Err(format!("|λ| + |ν| = {degree} is above the supported {MAX_DEGREE}"));
    }
    let mut entries = Vec::new();
    for mu in enumerate_strict(degree) {
        let f = f_coeff(&lambda, &nu, &mu).map_err(|e| e.to_string())?;
        if !f.is_zero() {
            let b = b_coeff(&lambda, &nu, &mu).map_err(|e| e.to_string())?;
            entries.push(json!({
                "mu": mu.to_string(),
                "b": b.to_string(),
                "f": f.to_string(),
                "total": f.eval_plus().to_string(),
            }));
        }
    }
    Ok(json!({ "lambda": lambda.to_string(), "nu": nu.to_string(), "entries": entries }).to_string())
}

/// Nonzero socle layers of `Z(λ, μ)` in the report schema.
pub fn socle_layers_json(label: &str, depth: usize) -> Result<String, String> {
    let label: Bipartition = parse("label", label)?;
    let (l, m) = label.sizes();
    if l.max(m) > MAX_DEGREE {
        return Err(format!("sizes above {MAX_DEGREE} are not supported"));
    }
    let mut entries = Vec::new();
    for r in 0..depth.min(l.min(m) + 1) {
        for a in enumerate_strict(l - r) {
            for b in enumerate_strict(m - r) {
                let lower = Bipartition::new(a.clone(), b);
                let mult = socle_mult(&label, &lower, r).map_err(|e| e.to_string())?;
                if !mult.is_zero() {
                    entries.push(ReportEntry::new(&label, &lower, r, &mult));
                }
            }
        }
    }
    let entries: Vec<_> = entries
        .iter()
        .map(|e| {
            json!({
                "layer": e.layer,
                "label": e.dst.to_string(),
                "total": e.total.to_string(),
                "graded": e.graded.as_ref().map(ToString::to_string),
            })
        })
        .collect();
    Ok(json!({ "label": label.to_string(), "entries": entries }).to_string())
}

fn diagram_json(d: &Diagram) -> serde_json::Value {
    let word: Vec<String> = canonical_decomposition(d).iter().map(ToString::to_string).collect();
    json!({ "text": d.to_string(), "diagram": d, "word": word })
}

/// Stacks `second` under `first` and returns all three diagrams.
pub fn concat_json(first: &str, second: &str) -> Result<String, String> {
    let d1: Diagram = parse("first diagram", first)?;
    let d2: Diagram = parse("second diagram", second)?;
    if d1.p + d1.q > 10 {
        return Err("diagrams with more than 10 top nodes are not drawn".into());
    }
    let joined = concat(&d1, &d2).map_err(|e| e.to_string())?;
    Ok(json!({ "first": diagram_json(&d1), "second": diagram_json(&d2), "result": diagram_json(&joined) }).to_string())
}

#[wasm_bindgen]
pub fn lr_table(lambda: &str, nu: &str) -> Result<String, JsValue> {
    lr_table_json(lambda, nu).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn socle_layers(label: &str, depth: usize) -> Result<String, JsValue> {
    socle_layers_json(label, depth).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn concat_diagrams(first: &str, second: &str) -> Result<String, JsValue> {
    concat_json(first, second).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_json(s: &str) -> serde_json::Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn lr_table_lists_nonzero_terms() {
        let v = parse_json(&lr_table_json("1", "2").unwrap());
        let mus: Vec<&str> = v["entries"].as_array().unwrap().iter().map(|e| e["mu"].as_str().unwrap()).collect();
        assert_eq!(mus, vec!["3", "2,1"]);
        assert_eq!(v["entries"][0]["total"], "4");
        assert!(lr_table_json("2,2", "1").is_err());
        assert!(lr_table_json("4", "3").is_err());
    }

    #[test]
    fn socle_layers_of_box_box() {
        let v = parse_json(&socle_layers_json("1|1", 2).unwrap());
        let layers: Vec<(u64, &str)> = v["entries"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| (e["layer"].as_u64().unwrap(), e["label"].as_str().unwrap()))
            .collect();
        assert_eq!(layers, vec![(0, "1|1"), (1, "-|-")]);
    }

    #[test]
    fn concatenation_is_reported() {
        let v = parse_json(
            &concat_json("2 2 0 | pairs: | through: 1->1 2->2* 3->3* 4->4", "2 2 1 | pairs: (2,3) | through: 1->1 2->4*")
                .unwrap(),
        );
        assert_eq!(v["result"]["text"], "2 2 1 | pairs: (2,3) | through: 1->1 2->4*");
        assert!(concat_json("1 0 0 | pairs: | through: 1->1", "2 0 0 | pairs: | through: 1->1 2->2").is_err());
    }
}
