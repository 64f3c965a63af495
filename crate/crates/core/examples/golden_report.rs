//! Compares the generated expansions and sentence with the printed transcriptions.
use zf_cantor::cantor;

fn main() {
    for cmp in cantor::compare_with_printed() {
        println!("{cmp}");
    }
}
