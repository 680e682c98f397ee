// The same search state looks unentangled or entangled depending on how
// the modes are carved into subsystems.

use unary_search::entangle::{
    grover_entanglement_trace, max_entanglement, second_quantized_embedding, DecompositionView,
    ViewKind,
};
use unary_search::grover::{PreparedSearch, SearchConfig};
use unary_search::Result;

pub fn run_example() -> Result<()> {
    let n = 8;
    let state = PreparedSearch::run(n, 3, &SearchConfig::default())?.final_state;

    let unary = max_entanglement(&state, &DecompositionView::unary())?;
    let qubit = max_entanglement(&state, &DecompositionView::new(ViewKind::Qubit, n)?)?;
    let occupation = second_quantized_embedding(&state)?.max_entanglement()?;
    println!("unary view:            entropy {:.6} bits", unary.entropy);
    println!(
        "qubit view:            entropy {:.6} bits, cut {:?}",
        qubit.entropy, qubit.bipartition
    );
    println!(
        "occupation-number view: entropy {:.6} bits",
        occupation.entropy
    );

    let trace = grover_entanglement_trace(16, 11, 3)?;
    println!(
        "qubit-view entropy between passes (n = 16): {:?}",
        trace.boundary
    );
    println!(
        "right after each box transit:               {:?}",
        trace.mid_pass
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
