from weyl_torus.management.commands._base import VerificationCommand


class Command(VerificationCommand):
    help = (
        "Reproduce the class table: representatives, eigenvalue orders, "
        "centraliser orders and elementary indices."
    )
    suites = ("classes",)
