from weyl_torus.management.commands._base import VerificationCommand


class Command(VerificationCommand):
    help = (
        "Component group duality, the twisted pairing and the minor gcd "
        "sweep."
    )
    suites = ("duality",)
