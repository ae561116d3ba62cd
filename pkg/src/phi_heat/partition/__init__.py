from phi_heat.partition.profile                                     import Profile
from phi_heat.partition.partition_config                            import PartitionConfig
from phi_heat.partition.bump_family                                 import BumpFamily
from phi_heat.partition.partition_auditor                           import PartitionAuditor, PartitionAuditReport
