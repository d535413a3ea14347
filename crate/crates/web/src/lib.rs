//! Browser bindings: each export takes an instance document (the same JSON
//! the command line reads) and returns a JSON string for the page to render.
//! Failures come back as a JavaScript string with the error message.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use gradecone::local::{associated_graded, tangent_cone, InstanceFile, LocalInstance};
use gradecone::ring::{Field, FieldSpec, PrimeField, Rationals};
use gradecone::Error;

/// A computation generic over the coefficient field.
trait Job {
    fn run<F: Field>(&self, inst: &LocalInstance<F>) -> Result<Value, Error>;
}

fn dispatch(text: &str, job: impl Job) -> Result<String, String> {
    let file = InstanceFile::from_json(text).map_err(|e| e.to_string())?;
    let spec = file.field_spec().map_err(|e| e.to_string())?;
    let value = match spec {
        FieldSpec::Prime(p) => PrimeField::new(p)
            .and_then(|k| LocalInstance::from_file(&file, k))
            .and_then(|i| job.run(&i)),
        FieldSpec::Rational => LocalInstance::from_file(&file, Rationals).and_then(|i| job.run(&i)),
    };
    value.map(|v| v.to_string()).map_err(|e| e.to_string())
}

struct TangentCone;

impl Job for TangentCone {
    fn run<F: Field>(&self, inst: &LocalInstance<F>) -> Result<Value, Error> {
        let tc = tangent_cone(inst)?;
        let gens: Vec<String> = tc.polynomials().iter().map(|p| inst.ring.format(p)).collect();
        Ok(json!({"homogeneous_input": inst.is_homogeneous(), "tangent_cone": gens}))
    }
}

struct Betti;

impl Job for Betti {
    fn run<F: Field>(&self, inst: &LocalInstance<F>) -> Result<Value, Error> {
        let bt = associated_graded(inst)?.betti;
        Ok(json!({
            "table": bt.render(),
            "totals": bt.totals(),
            "alpha": bt.alpha(),
            "gamma": bt.gamma(),
            "pd": bt.pd(),
            "reg": bt.regularity(),
            "pure": bt.is_pure(),
            "quasi_pure": bt.is_quasi_pure(),
        }))
    }
}

struct Hilbert(usize);

impl Job for Hilbert {
    fn run<F: Field>(&self, inst: &LocalInstance<F>) -> Result<Value, Error> {
        let h = associated_graded(inst)?.hilbert;
        Ok(json!({
            "dim": h.dim,
            "h_poly": h.h_poly,
            "e": h.e,
            "mu": h.mu,
            "hilbert_function": h.hilbert_function(self.0),
        }))
    }
}

/// Generators of the tangent cone (the initial-form ideal).
pub fn tangent_cone_json(instance: &str) -> Result<String, String> {
    dispatch(instance, TangentCone)
}

/// Graded Betti table of the associated graded ring with its shift
/// invariants and purity flags.
pub fn betti_json(instance: &str) -> Result<String, String> {
    dispatch(instance, Betti)
}

/// Hilbert function of the associated graded ring in degrees 0..=up_to,
/// with dimension, h-polynomial and Hilbert coefficients.
pub fn hilbert_json(instance: &str, up_to: usize) -> Result<String, String> {
    dispatch(instance, Hilbert(up_to))
}

#[wasm_bindgen(js_name = tangentCone)]
pub fn tangent_cone_js(instance: &str) -> Result<String, JsValue> {
    tangent_cone_json(instance).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = bettiTable)]
pub fn betti_js(instance: &str) -> Result<String, JsValue> {
    betti_json(instance).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = hilbertFunction)]
pub fn hilbert_js(instance: &str, up_to: u32) -> Result<String, JsValue> {
    hilbert_json(instance, up_to as usize).map_err(|e| JsValue::from_str(&e))
}
