import pytest

from seqproof.cli import main

TRUE_FORMULA = "p cnf 2 2\na 1 0\ne 2 0\n1 2 0\n-1 -2 0\n"
FALSE_FORMULA = "p cnf 1 1\na 1 0\n1 0\n"


@pytest.fixture
def formula_file(tmp_path):
    path = tmp_path / "alt.qdimacs"
    path.write_text(TRUE_FORMULA)
    return str(path)


def test_prove_then_verify_interactive(tmp_path, formula_file, capsys):
    transcript = str(tmp_path / "alt.transcript")
    assert main(["prove-tqbf", "--in", formula_file, "--out", transcript]) == 0
    out = capsys.readouterr().out
    assert "mode interactive" in out and "prime 37" in out
    assert main(["verify-tqbf", "--in", formula_file, "--transcript", transcript]) == 0
    assert "accepted" in capsys.readouterr().out


def test_prove_then_verify_fs(tmp_path, formula_file, capsys):
    transcript = str(tmp_path / "alt.transcript")
    assert main(["prove-tqbf", "--in", formula_file, "--fs", "--out", transcript]) == 0
    assert "mode fiat-shamir" in capsys.readouterr().out
    assert main(["verify-tqbf", "--in", formula_file, "--transcript", transcript]) == 0

    # flip one byte near the end (inside the last round's coin)
    blob = bytearray((tmp_path / "alt.transcript").read_bytes())
    blob[-1] ^= 0x01
    (tmp_path / "alt.transcript").write_bytes(bytes(blob))
    assert main(["verify-tqbf", "--in", formula_file, "--transcript", transcript]) == 1


def test_prove_false_formula_fails(tmp_path, capsys):
    path = tmp_path / "false.qdimacs"
    path.write_text(FALSE_FORMULA)
    assert main(["prove-tqbf", "--in", str(path)]) == 1
    assert "no membership proof" in capsys.readouterr().err


def test_custom_prime(formula_file, capsys):
    assert main(["prove-tqbf", "--in", formula_file, "--prime", "101"]) == 0
    assert "prime 101" in capsys.readouterr().out


def test_vdf_cycle(tmp_path, capsys):
    pp = str(tmp_path / "pp.bin")
    proof = str(tmp_path / "opening.proof")
    assert (
        main(
            ["vdf", "setup", "--lambda", "8", "--log2t", "6", "--space", "8",
             "--seed", "cli-demo", "--pp", pp]
        )
        == 0
    )
    assert "steps 64" in capsys.readouterr().out
    assert main(["vdf", "eval", "--pp", pp, "--input", "1011"]) == 0
    out = capsys.readouterr().out
    assert "steps 64" in out
    value = int(next(line for line in out.splitlines() if line.startswith("value ")).split()[1])

    assert main(["vdf", "open", "--pp", pp, "--input", "1011", "--proof", proof]) == 0
    out = capsys.readouterr().out
    assert "mode fiat-shamir" in out and f"value {value}" in out
    assert main(["vdf", "verify", "--proof", proof]) == 0
    assert "accepted" in capsys.readouterr().out

    # optional cross-checks against the statement the caller expects
    assert main(["vdf", "verify", "--proof", proof, "--pp", pp, "--input", "1011"]) == 0
    assert main(["vdf", "verify", "--proof", proof, "--input", "1010"]) == 1
    assert "input-mismatch" in capsys.readouterr().out

    # explicit challenge takes the interactive path
    assert (
        main(["vdf", "open", "--pp", pp, "--input", "1011", "--challenge", "60",
              "--proof", proof])
        == 0
    )
    assert "mode interactive" in capsys.readouterr().out
    assert main(["vdf", "verify", "--proof", proof]) == 0

    # tampering any byte of the proof file is caught
    raw = bytearray((tmp_path / "opening.proof").read_bytes())
    raw[-1] ^= 0xFF
    (tmp_path / "opening.proof").write_bytes(bytes(raw))
    assert main(["vdf", "verify", "--proof", proof]) == 1


def test_vdf_open_bad_challenge(tmp_path, capsys):
    pp = str(tmp_path / "pp.bin")
    main(["vdf", "setup", "--lambda", "8", "--log2t", "6", "--space", "8",
          "--seed", "cli-demo", "--pp", pp])
    capsys.readouterr()
    rc = main(["vdf", "open", "--pp", pp, "--input", "1", "--challenge", "2",
               "--proof", str(tmp_path / "x.proof")])
    assert rc == 1
    assert "error:" in capsys.readouterr().err


def test_vdf_attack_cli(tmp_path, capsys):
    pp = str(tmp_path / "pp.bin")
    proof = str(tmp_path / "forged.proof")
    main(["vdf", "setup", "--lambda", "8", "--log2t", "8", "--space", "8",
          "--seed", "forge-me", "--pp", pp])
    capsys.readouterr()
    assert main(["vdf", "attack", "--pp", pp, "--input", "0110", "--proof", proof]) == 0
    out = capsys.readouterr().out
    assert "forger steps 8 (honest evaluation takes 256)" in out
    assert "forged opening accepted" in out
    assert main(["vdf", "verify", "--proof", proof]) == 0


def test_exp_min_vars(capsys):
    assert main(["exp", "min-vars", "--steps", "65536"]) == 0
    assert capsys.readouterr().out.strip() == "361"


def test_exp_growth_cli(capsys):
    rc = main(["exp", "growth", "--lambda", "8", "--log2t", "4,5", "--space", "8"])
    assert rc == 0
    assert "PASS" in capsys.readouterr().out


def test_exp_soundness_cli_json(capsys):
    rc = main(["exp", "soundness", "--n", "1", "--m", "1", "--prime", "223",
               "--trials", "1000", "--json"])
    out = capsys.readouterr().out
    assert rc == 0
    assert '"name": "soundness"' in out


def test_exp_parallel_cli(capsys):
    rc = main(["exp", "parallel", "--vars", "8", "--clauses", "4", "--workers", "1,2"])
    assert rc == 0
    assert "PASS" in capsys.readouterr().out


def test_exp_attack_cli(capsys):
    rc = main(["exp", "attack", "--lambda", "16", "--log2t", "10", "--space", "8",
               "--instances", "100"])
    assert rc == 0


def test_missing_file_reports_error(tmp_path, capsys):
    assert main(["prove-tqbf", "--in", str(tmp_path / "nope.qdimacs")]) == 1
    assert "error:" in capsys.readouterr().err


def test_unknown_command_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
