// Builds the balanced splitter chain, prints it as a netlist and checks
// that it spreads mode 1 evenly.

use unary_search::{ModeState, Result, SplitterNetwork};

pub fn run_example() -> Result<()> {
    let net = SplitterNetwork::synthesize_balanced(5)?;
    let text = net.to_netlist();
    print!("{text}");

    let parsed: SplitterNetwork = text.parse()?;
    assert_eq!(parsed, net);

    let spread = net.apply(&ModeState::basis(5, 1)?)?;
    println!("output probabilities: {:?}", spread.probabilities());

    let back = net.apply_adjoint(&spread)?;
    println!(
        "round trip returns to mode 1 with probability {:.15}",
        back.probability(1)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
