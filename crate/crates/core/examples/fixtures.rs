//! Writes the model fixtures used by the CLI tests and the README.
//!
//! `cargo run -p opencospan --example fixtures -- <dir>`

use std::path::PathBuf;

use opencospan::cospan::to_structured;
use opencospan::json::{Cospans, Model, ModelFile};
use opencospan::models::{self, Names};

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir)?;
    for (name, file) in model_fixtures() {
        std::fs::write(dir.join(name), file.to_canonical_string() + "\n")?;
    }
    for (name, text) in configs() {
        std::fs::write(dir.join(name), text)?;
    }
    Ok(())
}

pub fn model_fixtures() -> Vec<(&'static str, ModelFile)> {
    let rated = |c| Model::PetriRates(Cospans::Decorated(c));
    vec![
        ("intro_graph.json", ModelFile { model: Model::Graph(Cospans::Decorated(models::intro_graph())), names: models::intro_graph_names() }),
        (
            "intro_graph_structured.json",
            ModelFile { model: Model::Graph(Cospans::Structured(to_structured(&models::intro_graph()))), names: models::intro_graph_names() },
        ),
        ("sir.json", ModelFile { model: rated(models::sir(0.3, 0.1)), names: models::sir_names() }),
        ("sir_left.json", ModelFile { model: rated(models::sir_left(0.3)), names: Names::new(&["S", "I"], &["i1", "i2", "i3"], &["I"]) }),
        ("sir_right.json", ModelFile { model: rated(models::sir_right(0.1)), names: Names::new(&["I", "R"], &["I"], &["o1"]) }),
        ("decay.json", ModelFile { model: rated(models::decay(0.5)), names: models::decay_names() }),
    ]
}

pub fn configs() -> Vec<(&'static str, &'static str)> {
    vec![
        ("sir_sim.json", "{\"t0\":0,\"t1\":10,\"dt\":0.001,\"initialState\":{\"S\":0.99,\"I\":0.01,\"R\":0}}\n"),
        (
            "sir_inflow_sim.json",
            "{\"t0\":0,\"t1\":10,\"dt\":0.01,\"initialState\":{\"S\":0.99,\"I\":0.01},\"schedule\":{\"inflows\":{\"i3\":[[0,0.1]]},\"outflows\":{\"o1\":[[5,0.02]]}}}\n",
        ),
        ("decay_sim.json", "{\"t0\":0,\"t1\":10,\"dt\":0.001,\"initialState\":{\"P\":1}}\n"),
    ]
}
