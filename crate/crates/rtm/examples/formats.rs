//! Read and write the text formats, and drive the command line in-process.
//!
//!     cargo run --example formats

use rtm::cli::run;
use rtm::format::{parse_rule, serialize_machine};

const WALKER: &str = "\
RTM1
d=1 n=2 k=1
F= (-1),(0),(1)
G=
# right off a 0 followed by a 1, left off a 1 preceded by a 0
0 0 0 | 1 -> | 1 | (0)
0 0 1 | 1 -> | 1 | (1)
0 1 0 | 1 -> | 1 | (-1)
0 1 1 | 1 -> | 1 | (-1)
1 0 0 | 1 -> | 1 | (0)
1 0 1 | 1 -> | 1 | (1)
1 1 0 | 1 -> | 1 | (0)
1 1 1 | 1 -> | 1 | (0)
";

fn main() {
    let m = parse_rule(WALKER).expect("valid table");
    let text = serialize_machine(&m);
    print!("{text}");
    assert_eq!(serialize_machine(&parse_rule(&text).unwrap()), text);

    let path = std::env::temp_dir().join("rtm-walker.rtm");
    std::fs::write(&path, &text).unwrap();
    let p = path.to_str().unwrap();
    for args in [vec!["classify", p], vec!["torsion-rfa1", p], vec!["quotient", p, "--period", "4"]] {
        let (code, out, err) = run(std::iter::once("rtm").chain(args.iter().copied()));
        println!("$ rtm {} -> exit {code}", args.join(" "));
        print!("{out}{err}");
    }

    match parse_rule("RTM1\nd=1 n=2 k=1\nF= (0)\nG=\n0 | 1 -> | 1 | (0)\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("incomplete table: {e}"),
    }
}
