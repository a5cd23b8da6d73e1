"""The plain ASCII line protocol the arm emulator speaks.

Commands go in as `MOV <zoom> <tilt> <pan>` with tokens +, -, 0; after each
applied command the emulator answers with a fixed two-decimal position
report `POS,<base>,<bottom>,<top>,<ext>,<x>,<y>,<z>`. Malformed input gets
an ERR line with the byte offset of the offending token and moves nothing.
"""

from camsteer import CameraCommand, Pan, Tilt, Zoom
from camsteer.arm import DEFAULT_STATE, ArmParams, encode_command, parse_report, serve

commands = [
    CameraCommand(zoom=Zoom.IN),
    CameraCommand(tilt=Tilt.DOWN, pan=Pan.RIGHT),
    CameraCommand(),  # hold position
]
print("encoded command lines:")
for cmd in commands:
    print(f"  {encode_command(cmd)!r}")

# An in-process emulator session: the same loop `camsteer arm-serve` runs on
# stdin/stdout, here fed from a list.
session = [encode_command(c) for c in commands] + ["MOV ? 0 0\n"]
responses: list[str] = []
serve(session, responses.append, DEFAULT_STATE, ArmParams())

print("\nsession transcript:")
for sent, got in zip(session, responses):
    print(f"  > {sent.strip()}")
    print(f"  < {got.strip()}")

fields = parse_report(responses[0])
print(f"\nfirst report decoded: base {fields.theta_base_deg} deg, "
      f"camera at {fields.camera_mm} mm")
