//! Images of the X objects under the generators at the balanced parameters.
//!
//!     cargo run --example x_objects -- 4

use evalbirep::bireps::evaluation::{decompose, x_objects, EvalAction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d: usize = std::env::args().nth(1).map_or(Ok(3), |s| s.parse())?;
    let ev = EvalAction::balanced(d)?;
    let xs = x_objects(ev.alg)?;
    for (j, x) in xs.iter().enumerate() {
        println!("X{j} = {x}");
    }
    for g in ev.generators() {
        for (j, x) in xs.iter().enumerate() {
            let img = ev.apply(g, x)?;
            let parts = match decompose(&img)? {
                Some(ps) if ps.is_empty() => "0".to_string(),
                Some(ps) => ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" + "),
                None => format!("{img}"),
            };
            println!("{g}(X{j}) = {parts}");
        }
    }
    Ok(())
}
