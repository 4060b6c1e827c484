from weyl_torus.management.commands._base import VerificationCommand


class Command(VerificationCommand):
    help = "Classes of powers of representatives and centraliser inclusions."
    suites = ("power_map",)
