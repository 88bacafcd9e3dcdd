//! Conjugating Pauli strings by Clifford gates.

use pauli_synth::{CliffordGate, PauliString};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for letter in ["X", "Y", "Z", "-Y"] {
        let p: PauliString = letter.parse()?;
        let h = p.conjugated(CliffordGate::H(0))?;
        let s = p.conjugated(CliffordGate::S(0))?;
        println!("{letter:>3}: H -> {h:>3}   S -> {s:>3}");
    }

    // CX(0, 1) on every two-qubit string; qubit 0 is the rightmost letter
    let cx = CliffordGate::CX(0, 1);
    for a in ["I", "X", "Y", "Z"] {
        let row: Vec<String> = ["I", "X", "Y", "Z"]
            .iter()
            .map(|b| {
                let p: PauliString = format!("{b}{a}").parse().unwrap();
                format!("{:>3}", p.conjugated(cx).unwrap().to_string())
            })
            .collect();
        println!("{a}_0 x (I X Y Z)_1 -> {}", row.join(" "));
    }

    let p: PauliString = "XYZ".parse()?;
    let q: PauliString = "ZZZ".parse()?;
    println!("{p} and {q} commute: {}", p.commutes(&q)?);
    Ok(())
}
